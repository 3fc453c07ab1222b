"""Fast transforms between grid values and Chebyshev coefficients (DCT-I)."""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike
from scipy.fft import dct

from app.modules.chebyshev.grid import ChebyshevGrid
from app.modules.chebyshev.series import ChebyshevSeries


def values_to_coeffs(values: ArrayLike) -> ChebyshevSeries:
    """Interpolate values sampled on the degree-N grid.

    ``values[i]`` is the sample at cos(i*pi/N). The coefficients are the
    DCT-I of the values scaled by 1/N, with c_0 and c_N halved.
    """
    v = np.asarray(values, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise ValueError("values_to_coeffs needs a nonempty 1-D vector of grid values")
    n = v.size - 1
    if n == 0:
        return ChebyshevSeries(v.copy())
    coeffs = dct(v, type=1) / n
    coeffs[0] /= 2
    coeffs[n] /= 2
    return ChebyshevSeries(coeffs)


interpolate = values_to_coeffs


def coeffs_to_values(series: ChebyshevSeries, grid: ChebyshevGrid) -> np.ndarray:
    """Evaluate ``series`` at every point of ``grid``.

    The series is zero-padded up to the grid degree, then mapped back with
    the inverse DCT-I.
    """
    if grid.degree < series.degree:
        raise ValueError(
            f"Grid of degree {grid.degree} cannot represent a degree-{series.degree} series"
        )
    n = grid.degree
    if n == 0:
        return np.array([series.coeffs[0]])
    a = np.zeros(n + 1)
    a[: series.degree + 1] = series.coeffs
    a[0] *= 2
    a[n] *= 2
    return dct(a, type=1) / 2
