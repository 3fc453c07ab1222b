"""Chebyshev grids, transforms and series."""

from app.modules.chebyshev.grid import ChebyshevGrid, chebyshev_points, dense_grid
from app.modules.chebyshev.series import (
    ChebyshevSeries,
    evaluate,
    lebesgue_log_bound,
    sup_error,
    truncate,
)
from app.modules.chebyshev.transform import coeffs_to_values, interpolate, values_to_coeffs

__all__ = [
    "ChebyshevGrid",
    "ChebyshevSeries",
    "chebyshev_points",
    "coeffs_to_values",
    "dense_grid",
    "evaluate",
    "interpolate",
    "lebesgue_log_bound",
    "sup_error",
    "truncate",
    "values_to_coeffs",
]
