"""Degree selection for noisy Chebyshev interpolants."""

from __future__ import annotations

import math

import numpy as np

from app.modules.chebyshev.series import ChebyshevSeries

# Coefficient magnitudes below this many ulps of the largest are treated as
# floating-point residue of the transform.
_ROUNDING_ULPS = 64.0


def _node_weights(degree: int) -> np.ndarray:
    w = np.ones(degree + 1)
    w[0] = 2.0
    w[-1] = 2.0
    return w


def residual_sums(series: ChebyshevSeries) -> np.ndarray:
    """RSS(n) for n = 0..N_hat: node-sum of squared residuals after truncating to degree n."""
    d = series.degree
    energy = (d + 1) / 2.0 * series.coeffs**2 * _node_weights(d)
    tail = np.cumsum(energy[::-1])[::-1]
    return np.append(tail[1:], 0.0)


def cp_scores(
    series: ChebyshevSeries, noise_floor: float, max_degree: int | None = None
) -> np.ndarray:
    """Mallows' Cp = RSS(n) + 2 (n + 1) sigma_hat^2 for n = 0..max_degree."""
    if noise_floor < 0 or math.isnan(noise_floor):
        raise ValueError(f"Noise floor must be nonnegative, got {noise_floor}")
    d = series.degree
    if max_degree is None:
        max_degree = d
    if not 0 <= max_degree <= d:
        raise ValueError(f"max_degree must lie in [0, {d}], got {max_degree}")
    scale = float(np.max(np.abs(series.coeffs)))
    rounding = (d + 1) / 2.0 * (_ROUNDING_ULPS * np.finfo(float).eps * scale) ** 2
    floor = max(noise_floor, rounding)
    rss = residual_sums(series)[: max_degree + 1]
    return rss + 2.0 * np.arange(1, max_degree + 2) * floor


def mallows_cp_select(
    series: ChebyshevSeries, noise_floor: float, max_degree: int | None = None
) -> int:
    """Degree n in [0, max_degree] minimizing Cp; ties go to the smallest n.

    ``max_degree`` defaults to the degree of ``series``.
    """
    return int(np.argmin(cp_scores(series, noise_floor, max_degree)))


def tail_noise_floor(series: ChebyshevSeries, fraction: float = 0.1) -> float:
    """Noise level read off the highest-index coefficients.

    Above the resolved degree the interpolant's coefficients are noise, each
    with variance about 2 sigma^2 / (N + 1).
    """
    d = series.degree
    k = max(1, math.ceil(fraction * (d + 1)))
    tail = series.coeffs[-k:]
    return max(0.0, (d + 1) / 2.0 * float(np.mean(tail * tail)))
