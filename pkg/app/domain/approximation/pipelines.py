"""End-to-end approximation pipelines: sample, interpolate, select a degree, truncate.

Each pipeline spends exactly N + 1 oracle draws and returns an
``ApproxResult``. The sampled nodes always form the Chebyshev grid of degree
N_hat (N for the plain pipeline); the pipelines differ only in how many draws
each node receives.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from app.domain.approximation.allocation import (
    AllocationPlan,
    allocate_known_sigma,
    allocate_presampled,
    allocate_uniform,
)
from app.domain.approximation.selection import mallows_cp_select, tail_noise_floor
from app.modules.chebyshev import ChebyshevSeries, chebyshev_points, truncate, values_to_coeffs
from app.modules.noise import SamplingOracle
from app.modules.stats import RunningMoments

logger = logging.getLogger(__name__)

DEFAULT_PRESAMPLE_FRACTION = 0.1


class Algorithm(str, Enum):
    NOISY = "noisy"
    WEIGHTED_KNOWN = "weighted_known"
    REPEAT_UNIFORM = "repeat_uniform"
    HETERO = "hetero"


@dataclass(frozen=True, eq=False)
class ApproxResult:
    algorithm: Algorithm
    series: ChebyshevSeries
    interpolant: ChebyshevSeries
    chosen_degree: int
    plan: AllocationPlan
    nodes: np.ndarray
    node_means: np.ndarray
    samples_used: int
    noise_floor_estimate: float
    node_variances: np.ndarray | None = None
    presample_size: int = 0
    presample_variances: np.ndarray | None = None

    @property
    def interpolant_degree(self) -> int:
        return self.interpolant.degree


def default_n_hat(N: int) -> int:
    """floor(sqrt(N))."""
    return math.isqrt(N)


def _check_degrees(N: int, N_hat: int) -> None:
    if N < 1:
        raise ValueError(f"Budget degree N must be positive, got {N}")
    if not 0 <= N_hat <= N:
        raise ValueError(f"N_hat must satisfy 0 <= N_hat <= N, got N_hat={N_hat}, N={N}")


def _finish(
    algorithm: Algorithm,
    oracle: SamplingOracle,
    start: int,
    nodes: np.ndarray,
    plan: AllocationPlan,
    moments: list[RunningMoments] | None,
    means: np.ndarray,
    noise_floor: float,
    presample_size: int = 0,
    presample_variances: np.ndarray | None = None,
) -> ApproxResult:
    interp = values_to_coeffs(means)
    n = mallows_cp_select(interp, noise_floor)
    used = oracle.samples_drawn - start
    if used != plan.budget:
        raise RuntimeError(
            f"{algorithm.value} drew {used} samples against a budget of {plan.budget}"
        )
    variances = None if moments is None else np.array([m.variance for m in moments])
    logger.debug(
        "%s: N_hat=%d chosen n=%d floor=%.3e samples=%d",
        algorithm.value, interp.degree, n, noise_floor, used,
    )
    return ApproxResult(
        algorithm=algorithm,
        series=truncate(interp, n),
        interpolant=interp,
        chosen_degree=n,
        plan=plan,
        nodes=nodes,
        node_means=means,
        samples_used=used,
        noise_floor_estimate=noise_floor,
        node_variances=variances,
        presample_size=presample_size,
        presample_variances=presample_variances,
    )


def noisy_chebtrunc(oracle: SamplingOracle, N: int) -> ApproxResult:
    """One draw at each of the N + 1 Chebyshev points, Cp-truncated interpolant."""
    _check_degrees(N, N)
    start = oracle.samples_drawn
    grid = chebyshev_points(N)
    values = oracle.sample_nodes(grid.points)
    plan = allocate_uniform(len(grid), N + 1)
    floor = tail_noise_floor(values_to_coeffs(values))
    return _finish(Algorithm.NOISY, oracle, start, grid.points, plan, None, values, floor)


def weighted_chebtrunc_known(oracle: SamplingOracle, N: int, N_hat: int) -> ApproxResult:
    """Oracle-sigma allocation: k_i proportional to sigma(x_i)^2 on N_hat + 1 nodes.

    With sigma identically zero on the grid there is nothing to weight by and
    the budget is split uniformly.
    """
    _check_degrees(N, N_hat)
    start = oracle.samples_drawn
    grid = chebyshev_points(N_hat)
    sig = oracle.noise.sigma(grid.points)
    if np.any(sig > 0):
        plan = allocate_known_sigma(sig, N + 1)
    else:
        plan = allocate_uniform(len(grid), N + 1)
    moments = oracle.sample_counts(grid.points, plan.counts)
    means = np.array([m.mean for m in moments])
    floor = float(np.mean(sig * sig / plan.counts))
    return _finish(
        Algorithm.WEIGHTED_KNOWN, oracle, start, grid.points, plan, moments, means, floor
    )


def repeated_chebtrunc(oracle: SamplingOracle, N: int, N_hat: int) -> ApproxResult:
    """Uniform repeats on N_hat + 1 nodes; the reference point for the weighted pipelines."""
    _check_degrees(N, N_hat)
    start = oracle.samples_drawn
    grid = chebyshev_points(N_hat)
    plan = allocate_uniform(len(grid), N + 1)
    moments = oracle.sample_counts(grid.points, plan.counts)
    means = np.array([m.mean for m in moments])
    if int(plan.counts.min()) >= 2:
        s2 = np.array([m.variance for m in moments])
        floor = float(np.mean(s2 / plan.counts))
    else:
        floor = tail_noise_floor(values_to_coeffs(means))
    return _finish(
        Algorithm.REPEAT_UNIFORM, oracle, start, grid.points, plan, moments, means, floor
    )


def presample_size(N: int, N_hat: int, r: float) -> int:
    """Draws per node in the pre-sampling pass: floor(r N / (N_hat + 1)).

    Raises:
        ValueError: If r is outside (0, 1) or the result is below 2.
    """
    if not 0.0 < r < 1.0:
        raise ValueError(f"Pre-sample fraction r must lie in (0, 1), got {r}")
    m = math.floor(r * N / (N_hat + 1))
    if m < 2:
        raise ValueError(
            f"Pre-sampling gives m={m} draws per node for N={N}, N_hat={N_hat}, r={r}; "
            "a sample variance needs m >= 2, so raise N or r or lower N_hat"
        )
    return m


def hetero_chebtrunc(
    oracle: SamplingOracle,
    N: int,
    N_hat: int | None = None,
    r: float = DEFAULT_PRESAMPLE_FRACTION,
) -> ApproxResult:
    """Estimate sigma^2 per node from a pre-sample, then spend the rest proportionally.

    Pre-sample and allocated draws are merged into a single mean per node.
    """
    if N_hat is None:
        N_hat = default_n_hat(N)
    _check_degrees(N, N_hat)
    m = presample_size(N, N_hat, r)
    start = oracle.samples_drawn
    grid = chebyshev_points(N_hat)
    pre = oracle.sample_counts(grid.points, np.full(len(grid), m))
    s2 = np.array([p.variance for p in pre])
    plan = allocate_presampled(s2, N + 1, m)
    post = oracle.sample_counts(grid.points, plan.counts - m)
    moments = [a.merge(b) for a, b in zip(pre, post, strict=True)]
    means = np.array([mo.mean for mo in moments])
    floor = float(np.mean(s2 / plan.counts))
    logger.debug(
        "hetero: m=%d pre-sample draws per node, %d allocated after", m, N + 1 - m * len(grid)
    )
    return _finish(
        Algorithm.HETERO, oracle, start, grid.points, plan, moments, means, floor,
        presample_size=m, presample_variances=s2,
    )


def run_pipeline(
    algorithm: Algorithm | str,
    oracle: SamplingOracle,
    N: int,
    N_hat: int | None = None,
    r: float = DEFAULT_PRESAMPLE_FRACTION,
) -> ApproxResult:
    """Dispatch by tag. ``N_hat`` defaults to floor(sqrt(N)) and is ignored by ``noisy``."""
    algo = Algorithm(algorithm)
    if N_hat is None:
        N_hat = default_n_hat(N)
    match algo:
        case Algorithm.NOISY:
            return noisy_chebtrunc(oracle, N)
        case Algorithm.WEIGHTED_KNOWN:
            return weighted_chebtrunc_known(oracle, N, N_hat)
        case Algorithm.REPEAT_UNIFORM:
            return repeated_chebtrunc(oracle, N, N_hat)
        case Algorithm.HETERO:
            return hetero_chebtrunc(oracle, N, N_hat, r)
