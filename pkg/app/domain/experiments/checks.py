"""Monte-Carlo estimators that compare empirical exceedance rates with the bounds.

Repetitions are processed in chunks so memory stays bounded for large m.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from app.modules.chebyshev import chebyshev_points, dense_grid, values_to_coeffs
from app.modules.noise import NoiseField, SamplingOracle, TargetFunction, derive_seed
from app.modules.stats import (
    dependent_bound,
    dependent_t_for,
    lemma1_params,
    prop1_bound,
    subexp_tail,
)

logger = logging.getLogger(__name__)

_CHUNK_ELEMENTS = 1 << 22


@dataclass(frozen=True)
class Exceedance:
    point: float
    empirical: float
    bound: float

    @property
    def dominated(self) -> bool:
        return self.empirical <= self.bound


def _chunks(reps: int, per_rep: int) -> list[int]:
    size = max(1, _CHUNK_ELEMENTS // max(per_rep, 1))
    return [min(size, reps - start) for start in range(0, reps, size)]


def sample_variance_exceedance(
    sigma: float, m: int, t_values: ArrayLike, reps: int, seed: int
) -> list[Exceedance]:
    """Frequency of |S^2 - sigma^2| > t over ``reps`` normal samples of size m."""
    ts = np.asarray(t_values, dtype=float)
    params = lemma1_params(sigma, m)
    rng = np.random.Generator(np.random.PCG64(seed))
    hits = np.zeros(ts.size, dtype=np.int64)
    for size in _chunks(reps, m):
        s2 = (sigma * rng.standard_normal((size, m))).var(axis=1, ddof=1)
        dev = np.abs(s2 - sigma * sigma)
        hits += (dev[:, None] > ts[None, :]).sum(axis=0)
    freq = hits / reps
    return [
        Exceedance(float(t), float(f), subexp_tail(float(t), params))
        for t, f in zip(ts, freq, strict=True)
    ]


def proportion_exceedance(
    sigma_vec: ArrayLike, m: int, s_values: ArrayLike, reps: int, seed: int
) -> list[Exceedance]:
    """Frequency with which some node's S_i^2 / sum S_j^2 misses its true share by more than s."""
    sig = np.asarray(sigma_vec, dtype=float)
    ss = np.asarray(s_values, dtype=float)
    bounds = [prop1_bound(float(s), sig, m) for s in ss]
    share = sig**2 / np.sum(sig**2)
    rng = np.random.Generator(np.random.PCG64(seed))
    hits = np.zeros(ss.size, dtype=np.int64)
    for size in _chunks(reps, m * sig.size):
        draws = sig[None, :, None] * rng.standard_normal((size, sig.size, m))
        s2 = draws.var(axis=2, ddof=1)
        est = s2 / s2.sum(axis=1, keepdims=True)
        rel = np.max(np.abs(est - share) / share, axis=1)
        hits += (rel[:, None] > ss[None, :]).sum(axis=0)
    freq = hits / reps
    return [
        Exceedance(float(s), float(f), b) for s, f, b in zip(ss, freq, bounds, strict=True)
    ]


@dataclass(frozen=True)
class DependentCheck:
    t: float
    threshold: float
    bound_probability: float
    empirical: float
    q_inf: float
    trials: int


def dependent_bound_check(
    target: TargetFunction,
    noise: NoiseField,
    N_hat: int,
    trials: int,
    seed: int,
    probability: float = 0.05,
    resolution: int = 2001,
) -> DependentCheck:
    """Empirical P(||f - p||_inf > threshold) for the untruncated interpolant.

    Each trial takes one draw per node from its own oracle, so the shared
    noise component is redrawn trial to trial. The interpolant is linear in
    the node values, so it is applied as a dense-grid matrix to a chunk of
    trials at once.
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    nodes = chebyshev_points(N_hat).points
    xs = dense_grid(resolution).points
    basis = np.column_stack(
        [values_to_coeffs(np.eye(N_hat + 1)[j])(xs) for j in range(N_hat + 1)]
    )
    f_dense = target(xs)
    q_inf = float(np.max(np.abs(f_dense - basis @ target(nodes))))
    t = dependent_t_for(N_hat, probability)
    bound = dependent_bound(N_hat, N_hat, noise.sigma(nodes), q_inf, t)

    exceed = 0
    for start in range(0, trials, 256):
        stop = min(trials, start + 256)
        values = np.stack(
            [
                SamplingOracle(target, noise, derive_seed(seed, trial)).sample_nodes(nodes)
                for trial in range(start, stop)
            ]
        )
        errors = np.max(np.abs(f_dense[None, :] - values @ basis.T), axis=1)
        exceed += int(np.sum(errors > bound.threshold))
    empirical = exceed / trials
    logger.info(
        "Dependent bound: N_hat=%d t=%.3f threshold=%.4g empirical %.4f vs bound %.4f",
        N_hat, t, bound.threshold, empirical, bound.probability,
    )
    return DependentCheck(t, bound.threshold, bound.probability, empirical, q_inf, trials)
