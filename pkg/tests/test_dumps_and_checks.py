"""Tests for per-node dumps, runtime fits and the bound-domination estimators."""

import numpy as np
import pytest

from app.domain.approximation import Algorithm
from app.domain.experiments import (
    ExperimentConfig,
    allocation_dump,
    error_profile,
    fit_linear_time,
    node_noise_dump,
    runtime_study,
)
from app.domain.experiments.checks import (
    dependent_bound_check,
    proportion_exceedance,
    sample_variance_exceedance,
)
from app.modules.noise import parse_noise, parse_target


def _config(**overrides) -> ExperimentConfig:
    fields = dict(noise="right_half", n_grid=[1000], trials=1, master_seed=3, sup_resolution=401)
    fields.update(overrides)
    return ExperimentConfig(**fields)


# --- dumps ---


def test_allocation_dump_columns_and_budget():
    rows = allocation_dump(_config(), 1000, 10)
    assert len(rows) == 11
    assert list(rows[0]) == ["x", "sigma", "presample_variance", "k_hetero", "k_known"]
    assert sum(r["k_hetero"] for r in rows) == 1001
    assert sum(r["k_known"] for r in rows) == 1001
    m = 9
    assert all(r["k_hetero"] >= m for r in rows)


def test_allocation_dump_follows_noise():
    rows = allocation_dump(_config(), 10_000, 20)
    noisy_side = [r["k_known"] for r in rows if r["x"] >= 0]
    quiet_side = [r["k_known"] for r in rows if r["x"] < 0]
    assert min(noisy_side) > max(quiet_side)
    assert all(r["sigma"] == 1.0 for r in rows if r["x"] >= 0)


@pytest.mark.parametrize("distribution", ["normal", "uniform"])
def test_allocation_dump_aggregates_trials(distribution):
    config = _config(distribution=distribution)
    single = allocation_dump(config, 1000, 10)
    rows = allocation_dump(config, 1000, 10, trials=6)
    assert list(rows[0]) == [
        "x", "sigma", "presample_variance", "k_hetero", "k_known",
        "k_hetero_mean", "k_hetero_q025", "k_hetero_q975",
    ]
    assert [r["k_hetero"] for r in rows] == [r["k_hetero"] for r in single]
    assert sum(r["k_hetero_mean"] for r in rows) == pytest.approx(1001)
    for r in rows:
        assert 9 <= r["k_hetero_q025"] <= r["k_hetero_mean"] <= r["k_hetero_q975"]


def test_allocation_dump_rejects_zero_trials():
    with pytest.raises(ValueError, match="trials"):
        allocation_dump(_config(), 1000, 10, trials=0)


def test_node_noise_dump_predictions():
    rows = node_noise_dump(_config(), 2000, 10, trials=20)
    assert len(rows) == 11
    uniform = rows[0]["predicted_uniform"]
    sigma = np.array([r["sigma"] for r in rows])
    assert uniform == pytest.approx(np.linalg.norm(sigma) / np.sqrt(2001))
    for r in rows:
        assert r["predicted_node"] == pytest.approx(r["sigma"] / np.sqrt(r["k_weighted"]))
        assert r["std_weighted"] >= 0
        assert r["k_uniform"] in (181, 182)


def test_node_noise_dump_rejects_zero_trials():
    with pytest.raises(ValueError, match="trials"):
        node_noise_dump(_config(), 2000, 10, trials=0)


def test_error_profile_columns():
    config = _config(algorithms=[Algorithm.NOISY, Algorithm.HETERO], sup_resolution=101)
    rows = error_profile(config, 1000)
    assert len(rows) == 101
    assert list(rows[0]) == ["x", "noisy", "hetero"]
    assert rows[0]["x"] == 1.0


def test_error_profile_zero_noise_polynomial():
    config = _config(
        target="chebt(2)", noise="constant(0)", algorithms=[Algorithm.NOISY], sup_resolution=51
    )
    rows = error_profile(config, 64)
    assert max(abs(r["noisy"]) for r in rows) < 1e-12


# --- runtime ---


def test_fit_linear_time_recovers_line():
    ns = np.array([1e3, 1e4, 1e5, 1e6])
    fit = fit_linear_time(ns, 2e-7 * ns + 0.01)
    assert fit.slope == pytest.approx(2e-7)
    assert fit.intercept == pytest.approx(0.01)
    assert fit.relative_residual < 1e-10


def test_fit_linear_time_needs_two_points():
    with pytest.raises(ValueError, match="at least two"):
        fit_linear_time([1.0], [1.0])


def test_runtime_study_rows():
    rows = runtime_study([1000, 2000], trials=2, master_seed=5)
    assert [(r.algorithm, r.N) for r in rows] == [
        (Algorithm.NOISY, 1000),
        (Algorithm.NOISY, 2000),
        (Algorithm.HETERO, 1000),
        (Algorithm.HETERO, 2000),
    ]
    for r in rows:
        assert r.trials == 2
        assert 0 < r.min_time <= r.median_time
        assert list(r.as_row()) == ["algorithm", "N", "trials", "median_time", "min_time"]


# --- bound domination ---


def test_sample_variance_exceedance_small_run():
    result = sample_variance_exceedance(1.0, 100, [0.5, 1.0, 2.0], reps=2000, seed=1)
    assert [e.point for e in result] == [0.5, 1.0, 2.0]
    assert all(0.0 <= e.empirical <= 1.0 for e in result)
    assert all(e.dominated for e in result if e.bound < 1.0)


def test_proportion_exceedance_small_run():
    result = proportion_exceedance(np.ones(5), 100, [0.3, 0.5], reps=500, seed=2)
    assert all(e.dominated for e in result)


def test_proportion_exceedance_validates_before_sampling():
    with pytest.raises(ValueError, match="positive"):
        proportion_exceedance([1.0, 0.0], 100, [0.5], reps=10, seed=0)


def test_dependent_bound_check_small_run():
    check = dependent_bound_check(
        parse_target("runge"),
        parse_noise("constant(0.1)", dependence="shared(w=0.5)"),
        N_hat=16,
        trials=200,
        seed=4,
        resolution=401,
    )
    assert check.trials == 200
    assert check.bound_probability == pytest.approx(0.05)
    assert check.q_inf > 0
    assert check.empirical <= 0.05


def test_dependent_bound_check_rejects_zero_trials():
    with pytest.raises(ValueError, match="trials"):
        dependent_bound_check(
            parse_target("zero"), parse_noise("constant(1)"), 4, trials=0, seed=0
        )
