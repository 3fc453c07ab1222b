"""Monte-Carlo acceptance checks at the documented problem sizes.

These take minutes; run with ``pytest -m slow``.
"""

import numpy as np
import pytest

from app.domain.approximation import (
    Algorithm,
    allocate_known_sigma,
    hetero_chebtrunc,
    largest_remainder,
)
from app.domain.experiments import (
    ExperimentConfig,
    fit_linear_time,
    get_preset,
    node_noise_dump,
    run_sweep,
    runtime_study,
    summarize,
)
from app.domain.experiments.checks import (
    dependent_bound_check,
    proportion_exceedance,
    sample_variance_exceedance,
)
from app.domain.experiments.sweep import trial_seed
from app.modules.noise import SamplingOracle, parse_noise, parse_target

pytestmark = pytest.mark.slow

WORKERS = 4


def _mean_errors(config: ExperimentConfig) -> dict[Algorithm, float]:
    rows = summarize(run_sweep(config, workers=WORKERS), keys=("algorithm",))
    assert all(r.failed == 0 for r in rows)
    return {Algorithm(r.group["algorithm"]): r.mean_error for r in rows}


def test_homoskedastic_error_decays_like_inverse_sqrt():
    config = get_preset("homoskedastic-scaling")
    rows = summarize(run_sweep(config, workers=WORKERS))
    ns = np.array([r.group["N"] for r in rows], dtype=float)
    errors = np.array([r.mean_error for r in rows])
    slope, _ = np.polyfit(np.log(ns), np.log(errors), 1)
    assert -0.65 <= slope <= -0.35


def test_weighted_sampling_makes_node_noise_uniform():
    config = ExperimentConfig(noise="right_half", n_grid=[10**6], trials=1)
    rows = node_noise_dump(config, 10**6, 1000, trials=200)
    # nodes whose proportional share is at least one sample
    active = [r for r in rows if r["sigma"] == 1.0]
    predicted = active[0]["predicted_uniform"]
    for bucket in np.array_split(np.arange(len(active)), 10):
        pooled = np.sqrt(np.mean([active[i]["std_weighted"] ** 2 for i in bucket]))
        assert pooled == pytest.approx(predicted, rel=0.1)


def test_weighting_improves_on_plain_sampling():
    errors = _mean_errors(get_preset("known-vs-noisy"))
    ratio = errors[Algorithm.WEIGHTED_KNOWN] / errors[Algorithm.NOISY]
    assert 0.5 <= ratio <= 0.9


def test_presampling_approaches_known_sigma():
    config = ExperimentConfig(
        noise="right_half_10",
        algorithms=[Algorithm.WEIGHTED_KNOWN, Algorithm.HETERO],
        n_grid=[10**6],
        trials=100,
    )
    errors = _mean_errors(config)
    ratio = errors[Algorithm.HETERO] / errors[Algorithm.WEIGHTED_KNOWN]
    assert 0.9 <= ratio <= 1.35


def test_burst_noise_headline():
    errors = _mean_errors(get_preset("burst-headline"))
    assert errors[Algorithm.HETERO] <= 0.3 * errors[Algorithm.NOISY]


@pytest.mark.parametrize("m", [10, 100, 1000])
def test_sample_variance_bound_dominates(m):
    t_values = np.linspace(0.05, 3.0, 60)
    for e in sample_variance_exceedance(1.0, m, t_values, reps=100_000, seed=m):
        if e.bound < 1.0:
            assert e.dominated, e


@pytest.mark.parametrize("m", [100, 1000])
def test_proportion_bound_dominates(m):
    for e in proportion_exceedance(np.ones(5), m, [0.3, 0.5], reps=10_000, seed=m):
        if e.bound < 1.0:
            assert e.dominated, e


def test_allocation_invariants_on_random_cases():
    rng = np.random.default_rng(2024)
    for _ in range(10_000):
        n = int(rng.integers(1, 130))
        budget = int(rng.integers(n, 10_001))
        sigma = rng.uniform(0, 1, n) ** rng.uniform(1, 6)
        if not np.any(sigma > 0):
            continue
        plan = allocate_known_sigma(sigma, budget)
        k = plan.counts
        assert k.sum() == budget
        assert k.min() >= 1
        order = np.argsort(sigma)
        assert np.all(np.diff(k[order]) >= -1)

        w = sigma * sigma
        if w.sum() == 0:
            continue
        raw = largest_remainder(w, budget)
        err = raw - w * (budget / w.sum())
        # no exchange of one unit between two nodes brings the split closer to the quotas
        assert err.max() - err.min() <= 1 + 1e-9


def test_dependent_noise_bound_holds():
    check = dependent_bound_check(
        parse_target("runge"),
        parse_noise("right_half", dependence="shared(w=0.5)"),
        N_hat=64,
        trials=10_000,
        seed=12,
    )
    assert check.bound_probability == pytest.approx(0.05)
    assert check.empirical <= 0.05


def test_estimated_allocation_converges_to_known_sigma():
    target, noise = parse_target("runge"), parse_noise("sin3")
    deviations = []
    for N in (10**4, 10**5, 10**6):
        per_trial = []
        for t in range(10):
            oracle = SamplingOracle(target, noise, trial_seed(7, Algorithm.HETERO, N, 20, t))
            result = hetero_chebtrunc(oracle, N, 20)
            sigma2 = noise.sigma(result.nodes) ** 2
            share = result.plan.counts / (N + 1)
            per_trial.append(np.mean(np.abs(share - sigma2 / sigma2.sum())))
        deviations.append(np.mean(per_trial))
    assert deviations[0] > deviations[1] > deviations[2]


def test_hetero_error_is_insensitive_to_interpolation_degree():
    config = ExperimentConfig(
        noise="right_half",
        algorithms=[Algorithm.HETERO],
        n_grid=[10**6],
        n_hat_grid=[100, 1000, 10_000],
        trials=20,
    )
    rows = summarize(run_sweep(config, workers=WORKERS), keys=("N_hat",))
    assert all(r.failed == 0 for r in rows)
    errors = [r.mean_error for r in rows]
    assert len(errors) == 3
    assert max(errors) / min(errors) < 10


def test_selected_degree_stabilises_as_budget_grows():
    config = ExperimentConfig(
        noise="constant(0.1)",
        algorithms=[Algorithm.NOISY],
        n_grid=[10**4, 10**5, 10**6],
        trials=20,
    )
    records = run_sweep(config, workers=WORKERS)
    medians = [
        np.median([rec.chosen_degree for rec in records if rec.N == N and not rec.failed])
        for N in config.n_grid
    ]
    assert max(medians) < 100
    for lo, hi in zip(medians, medians[1:], strict=False):
        assert -2 <= hi - lo <= 15


def test_hetero_runtime_is_linear_and_beats_full_transform():
    ns = [1000, 3000, 10_000, 30_000, 100_000, 300_000, 1_000_000]
    rows = runtime_study(ns, trials=5)
    hetero = [r for r in rows if r.algorithm == Algorithm.HETERO]
    fit = fit_linear_time([r.N for r in hetero], [r.median_time for r in hetero])
    assert fit.slope > 0
    assert fit.relative_residual < 0.2
    at_top = {r.algorithm: r.median_time for r in rows if r.N == 1_000_000}
    assert at_top[Algorithm.HETERO] < at_top[Algorithm.NOISY]
