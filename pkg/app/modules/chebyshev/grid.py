"""Chebyshev extrema grids on [-1, 1]."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class ChebyshevGrid:
    """The N+1 points cos(i*pi/N), i = 0..N, descending from 1 to -1."""

    degree: int
    points: np.ndarray

    def __len__(self) -> int:
        return self.degree + 1


def chebyshev_points(n: int) -> ChebyshevGrid:
    """Build the degree-``n`` Chebyshev grid.

    Uses sin(pi*(N - 2i)/(2N)), which equals cos(i*pi/N) but is exactly
    antisymmetric and puts the midpoint at 0.0. ``n = 0`` gives the single
    point 1.
    """
    if n < 0:
        raise ValueError(f"Grid degree must be nonnegative, got {n}")
    if n == 0:
        return ChebyshevGrid(degree=0, points=np.ones(1))
    m = np.arange(n, -n - 1, -2, dtype=float)
    points = np.sin(np.pi * m / (2 * n))
    points.flags.writeable = False
    return ChebyshevGrid(degree=n, points=points)


def dense_grid(resolution: int) -> ChebyshevGrid:
    """A ``resolution``-point Chebyshev grid for error measurement."""
    if resolution < 2:
        raise ValueError(f"Resolution must be at least 2, got {resolution}")
    return chebyshev_points(resolution - 1)
