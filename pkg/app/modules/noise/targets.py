"""Named catalog of noise-free target functions on [-1, 1]."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev as npcheb
from numpy.polynomial import polynomial as nppoly
from numpy.typing import ArrayLike

from app.modules.noise.grammar import CallSpec, parse_call


@dataclass(frozen=True)
class TargetFunction:
    """A vectorized f: [-1, 1] -> R with its canonical spec string."""

    label: str
    fn: Callable[[np.ndarray], np.ndarray]

    def __call__(self, x: ArrayLike) -> np.ndarray | float:
        xs = np.asarray(x, dtype=float)
        y = self.fn(xs)
        if xs.ndim == 0:
            return float(y)
        return np.broadcast_to(y, xs.shape).astype(float)


def runge(a: float = 25.0) -> TargetFunction:
    label = "runge" if a == 25.0 else f"runge(a={a!r})"
    return TargetFunction(label, lambda x: 1.0 / (1.0 + a * x * x))


def chebyshev_t(degree: int) -> TargetFunction:
    if degree < 0:
        raise ValueError(f"Chebyshev degree must be nonnegative, got {degree}")
    coeffs = np.zeros(degree + 1)
    coeffs[degree] = 1.0
    return TargetFunction(f"chebt({degree})", lambda x: npcheb.chebval(x, coeffs))


def polynomial(coeffs: list[float]) -> TargetFunction:
    """Monomial coefficients, lowest order first."""
    if not coeffs:
        raise ValueError("poly() needs at least one coefficient")
    c = np.array(coeffs, dtype=float)
    spec = CallSpec(original="", name="poly", args=list(c))
    return TargetFunction(spec.render(), lambda x: nppoly.polyval(x, c))


def zero() -> TargetFunction:
    return TargetFunction("zero", lambda x: np.zeros_like(x))


def parse_target(expr: str) -> TargetFunction:
    """Build a target from ``runge``, ``chebt(d)``, ``poly(c0, c1, ...)`` or ``zero``."""
    spec = parse_call(expr)
    if spec.name == "runge":
        return runge(spec.value("a", 0, 25.0))
    if spec.name == "chebt":
        degree = spec.value("degree", 0)
        if not float(degree).is_integer():
            raise ValueError(f"chebt() degree must be an integer, got {degree}")
        return chebyshev_t(int(degree))
    if spec.name == "poly":
        if spec.kwargs:
            raise ValueError("poly() takes positional coefficients only")
        return polynomial(spec.args)
    if spec.name == "zero":
        return zero()
    raise ValueError(f"Unknown target function: {spec.name}")
