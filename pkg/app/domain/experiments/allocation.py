"""Per-node and pointwise dumps: allocations, post-averaging node noise, error profiles."""

from __future__ import annotations

import logging

import numpy as np

from app.domain.approximation import (
    Algorithm,
    allocate_known_sigma,
    hetero_chebtrunc,
    run_pipeline,
)
from app.domain.experiments.config import ExperimentConfig
from app.domain.experiments.summary import QUANTILE_METHOD, QUANTILES
from app.domain.experiments.sweep import trial_seed
from app.modules.chebyshev import dense_grid
from app.modules.noise import SamplingOracle

logger = logging.getLogger(__name__)


def allocation_dump(
    config: ExperimentConfig, N: int, N_hat: int, r: float | None = None, trials: int = 1
) -> list[dict[str, float]]:
    """Hetero's estimated allocation next to the known-sigma one, node by node.

    Columns: x, sigma, presample_variance, k_hetero, k_known, taken from trial 0.
    With ``trials > 1`` the hetero counts of every trial are also aggregated
    into k_hetero_mean, k_hetero_q025 and k_hetero_q975.
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    r = config.r if r is None else r
    target = config.target_function()
    noise = config.noise_field()
    results = [
        hetero_chebtrunc(
            SamplingOracle(
                target, noise, trial_seed(config.master_seed, Algorithm.HETERO, N, N_hat, t)
            ),
            N,
            N_hat,
            r,
        )
        for t in range(trials)
    ]
    result = results[0]
    sigma = noise.sigma(result.nodes)
    known = allocate_known_sigma(sigma, N + 1)
    logger.info(
        "Allocation N=%d N_hat=%d over %d trial(s): pre-sample m=%d, max k hetero=%d known=%d",
        N, N_hat, trials, result.presample_size,
        int(result.plan.counts.max()), int(known.counts.max()),
    )
    rows = [
        {
            "x": float(x),
            "sigma": float(s),
            "presample_variance": float(v),
            "k_hetero": int(kh),
            "k_known": int(kk),
        }
        for x, s, v, kh, kk in zip(
            result.nodes, sigma, result.presample_variances, result.plan.counts, known.counts,
            strict=True,
        )
    ]
    if trials > 1:
        counts = np.array([res.plan.counts for res in results], dtype=float)
        q_lo, q_hi = np.quantile(counts, QUANTILES, axis=0, method=QUANTILE_METHOD)
        for row, mean, lo, hi in zip(rows, counts.mean(axis=0), q_lo, q_hi, strict=True):
            row.update(k_hetero_mean=float(mean), k_hetero_q025=float(lo), k_hetero_q975=float(hi))
    return rows


def node_noise_dump(
    config: ExperimentConfig, N: int, N_hat: int, trials: int
) -> list[dict[str, float]]:
    """Pooled empirical std of ybar_i - f(x_i) per node, weighted vs uniform repeats.

    ``predicted_node`` is sigma_i / sqrt(k_i) under the known-sigma
    allocation; ``predicted_uniform`` is ||sigma||_2 / sqrt(N + 1), which it
    equals wherever the proportional target was at least one sample.
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    target = config.target_function()
    noise = config.noise_field()
    algorithms = (Algorithm.WEIGHTED_KNOWN, Algorithm.REPEAT_UNIFORM)
    sq_dev = {a: np.zeros(N_hat + 1) for a in algorithms}
    counts = {}
    nodes = None
    for algorithm in algorithms:
        for trial in range(trials):
            oracle = SamplingOracle(
                target, noise, trial_seed(config.master_seed, algorithm, N, N_hat, trial)
            )
            result = run_pipeline(algorithm, oracle, N, N_hat, config.r)
            dev = result.node_means - target(result.nodes)
            sq_dev[algorithm] += dev * dev
            counts[algorithm] = result.plan.counts
            nodes = result.nodes
    sigma = noise.sigma(nodes)
    k_w = counts[Algorithm.WEIGHTED_KNOWN]
    k_u = counts[Algorithm.REPEAT_UNIFORM]
    std_w = np.sqrt(sq_dev[Algorithm.WEIGHTED_KNOWN] / trials)
    std_u = np.sqrt(sq_dev[Algorithm.REPEAT_UNIFORM] / trials)
    uniform = float(np.linalg.norm(sigma)) / np.sqrt(N + 1)
    return [
        {
            "x": float(nodes[i]),
            "sigma": float(sigma[i]),
            "k_weighted": int(k_w[i]),
            "std_weighted": float(std_w[i]),
            "k_uniform": int(k_u[i]),
            "std_uniform": float(std_u[i]),
            "predicted_node": float(sigma[i] / np.sqrt(k_w[i])),
            "predicted_uniform": uniform,
        }
        for i in range(N_hat + 1)
    ]


def error_profile(config: ExperimentConfig, N: int) -> list[dict[str, float]]:
    """f(x) - p_n(x) on the dense grid, one column per configured algorithm (trial 0)."""
    target = config.target_function()
    noise = config.noise_field()
    xs = dense_grid(config.sup_resolution).points
    columns: dict[str, np.ndarray] = {}
    for algorithm in config.algorithms:
        N_hat = N if algorithm is Algorithm.NOISY else config.n_hats_for(N)[0]
        oracle = SamplingOracle(
            target, noise, trial_seed(config.master_seed, algorithm, N, N_hat, 0)
        )
        result = run_pipeline(algorithm, oracle, N, N_hat, config.r)
        columns[algorithm.value] = target(xs) - result.series(xs)
    return [
        {"x": float(x), **{name: float(col[i]) for name, col in columns.items()}}
        for i, x in enumerate(xs)
    ]
