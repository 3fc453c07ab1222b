"""Chebyshev series: Clenshaw evaluation, truncation and error measurement."""

from __future__ import annotations

import math
from collections.abc import Callable

import numpy as np
from numpy.typing import ArrayLike

from app.modules.chebyshev.grid import dense_grid


class ChebyshevSeries:
    """Coefficients c_0..c_d of sum c_i T_i(x). Immutable once built."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: ArrayLike) -> None:
        c = np.array(coeffs, dtype=float).ravel()
        if c.size == 0:
            raise ValueError("A Chebyshev series needs at least one coefficient")
        c.flags.writeable = False
        self._coeffs = c

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def degree(self) -> int:
        return self._coeffs.size - 1

    def __call__(self, x: ArrayLike) -> np.ndarray | float:
        return evaluate(self, x)

    def __len__(self) -> int:
        return self._coeffs.size

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChebyshevSeries):
            return NotImplemented
        return np.array_equal(self._coeffs, other._coeffs)

    def __repr__(self) -> str:
        return f"ChebyshevSeries(degree={self.degree}, coeffs={self._coeffs.tolist()!r})"


def evaluate(series: ChebyshevSeries, x: ArrayLike) -> np.ndarray | float:
    """Clenshaw recurrence for sum c_i T_i(x); scalar in, scalar out."""
    xs = np.asarray(x, dtype=float)
    c = series.coeffs
    b1 = np.zeros_like(xs)
    b2 = np.zeros_like(xs)
    for ck in c[:0:-1]:
        b1, b2 = 2 * xs * b1 - b2 + ck, b1
    result = xs * b1 - b2 + c[0]
    if result.ndim == 0:
        return float(result)
    return result


def truncate(series: ChebyshevSeries, n: int) -> ChebyshevSeries:
    """Keep c_0..c_n unchanged."""
    if n < 0 or n > series.degree:
        raise ValueError(f"Cannot truncate a degree-{series.degree} series at {n}")
    return ChebyshevSeries(series.coeffs[: n + 1])


def lebesgue_log_bound(n: int) -> float:
    """Upper bound (2/pi) log(N+1) + 1 on the Chebyshev Lebesgue constant."""
    if n < 0:
        raise ValueError(f"Degree must be nonnegative, got {n}")
    return 2.0 / math.pi * math.log(n + 1) + 1.0


def sup_error(
    f: Callable[[np.ndarray], np.ndarray],
    series: ChebyshevSeries,
    resolution: int | None = None,
) -> float:
    """Estimate ||f - series||_inf on a dense Chebyshev grid.

    ``f`` must accept a numpy array. The default resolution is
    10 * max(degree, 100) points.
    """
    if resolution is None:
        resolution = 10 * max(series.degree, 100)
    xs = dense_grid(resolution).points
    return float(np.max(np.abs(np.asarray(f(xs), dtype=float) - evaluate(series, xs))))
