"""Heteroskedastic noise fields: sigma(x), distribution family, dependence mode."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from numpy.typing import ArrayLike

from app.modules.noise.grammar import CallSpec, parse_call


class NoiseKind(str, Enum):
    CONSTANT = "constant"
    INDICATOR = "indicator"
    EXPRESSION = "expression"


class Distribution(str, Enum):
    NORMAL = "normal"
    # Symmetric uniform on [-a, a] with a = sigma * sqrt(3), so sigma stays the std.
    UNIFORM = "uniform"


@dataclass(frozen=True)
class Dependence:
    """Cross-node dependence. ``weight`` is the shared-component weight w."""

    shared: bool = False
    weight: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.weight <= 1.0:
            raise ValueError(f"Shared weight must lie in [0, 1], got {self.weight}")
        if not self.shared and self.weight != 0.0:
            raise ValueError("Independent noise cannot carry a shared weight")

    @property
    def label(self) -> str:
        return f"shared(w={self.weight!r})" if self.shared else "independent"


INDEPENDENT = Dependence()


@dataclass(frozen=True)
class NoiseField:
    """sigma(x) on [-1, 1] plus its distribution family and dependence mode."""

    kind: NoiseKind
    label: str
    _sigma: Callable[[np.ndarray], np.ndarray] = field(repr=False, compare=False)
    distribution: Distribution = Distribution.NORMAL
    dependence: Dependence = INDEPENDENT

    @property
    def homoskedastic(self) -> bool:
        return self.kind is NoiseKind.CONSTANT

    def sigma(self, xs: ArrayLike) -> np.ndarray:
        """Vectorized sigma(x); no domain check."""
        x = np.asarray(xs, dtype=float)
        return np.broadcast_to(self._sigma(x), x.shape).astype(float)

    def sigma_at(self, x: float) -> float:
        return sigma_at(self, x)

    def with_options(
        self,
        distribution: Distribution | str | None = None,
        dependence: Dependence | None = None,
    ) -> NoiseField:
        return NoiseField(
            kind=self.kind,
            label=self.label,
            _sigma=self._sigma,
            distribution=Distribution(distribution) if distribution else self.distribution,
            dependence=dependence if dependence is not None else self.dependence,
        )

    # --- constructors ---

    @classmethod
    def constant(cls, sigma: float) -> NoiseField:
        if sigma < 0:
            raise ValueError(f"Noise level must be nonnegative, got {sigma}")
        spec = CallSpec("", "constant", kwargs={"sigma": sigma})
        return cls(NoiseKind.CONSTANT, spec.render(), lambda x: np.full_like(x, sigma))

    @classmethod
    def indicator(cls, hi: float, lo: float, a: float, b: float) -> NoiseField:
        """sigma = hi on [a, b], lo elsewhere."""
        if hi < 0 or lo < 0:
            raise ValueError("Noise levels must be nonnegative")
        if not -1.0 <= a <= b <= 1.0:
            raise ValueError(f"Burst interval [{a}, {b}] must lie inside [-1, 1]")
        spec = CallSpec("", "burst", kwargs={"hi": hi, "lo": lo, "a": a, "b": b})
        return cls(
            NoiseKind.INDICATOR,
            spec.render(),
            lambda x: np.where((x >= a) & (x <= b), hi, lo),
        )

    @classmethod
    def sin3(cls, floor: float = 1e-5) -> NoiseField:
        """sigma = |sin(3x)| + floor."""
        if floor < 0:
            raise ValueError("Noise floor must be nonnegative")
        spec = CallSpec("", "sin3", kwargs={"floor": floor})
        return cls(NoiseKind.EXPRESSION, spec.render(), lambda x: np.abs(np.sin(3 * x)) + floor)

    @classmethod
    def runge_shaped(cls, scale: float = 1.0, floor: float = 0.0) -> NoiseField:
        """sigma = scale / (1 + 25 x^2) + floor."""
        if scale < 0 or floor < 0:
            raise ValueError("Noise scale and floor must be nonnegative")
        spec = CallSpec("", "runge", kwargs={"scale": scale, "floor": floor})
        return cls(
            NoiseKind.EXPRESSION,
            spec.render(),
            lambda x: scale / (1.0 + 25.0 * x * x) + floor,
        )


def sigma_at(noise: NoiseField, x: float) -> float:
    """Noise standard deviation at ``x``.

    Raises:
        ValueError: If ``x`` lies outside [-1, 1].
    """
    if not -1.0 <= x <= 1.0:
        raise ValueError(f"x = {x} lies outside [-1, 1]")
    return float(noise.sigma(x))


# hi, lo, a, b
_BURST_PRESETS: dict[str, tuple[float, float, float, float]] = {
    "right_half": (1.0, 1e-5, 0.0, 1.0),
    "right_half_10": (10.0, 1e-5, 0.0, 1.0),
    "edge_spike": (10.0, 1e-5, 0.9, 1.0),
    "narrow_burst": (1.0, 1e-5, 0.0, 0.1),
}


def parse_dependence(expr: str) -> Dependence:
    """``independent`` or ``shared(w=0.5)``."""
    spec = parse_call(expr)
    if spec.name == "independent":
        return INDEPENDENT
    if spec.name == "shared":
        return Dependence(shared=True, weight=spec.value("w", 0))
    raise ValueError(f"Unknown dependence mode: {spec.name}")


def parse_noise(
    expr: str,
    distribution: Distribution | str = Distribution.NORMAL,
    dependence: Dependence | str = INDEPENDENT,
) -> NoiseField:
    """Build a noise field from the catalog.

    Supported forms:
        constant(sigma)             - homoskedastic
        burst(hi, lo, a, b)         - hi on [a, b], lo elsewhere
        sin3(floor=1e-5)            - |sin 3x| + floor
        runge(scale=1, floor=0)     - scale / (1 + 25x^2) + floor
        right_half, right_half_10, edge_spike, narrow_burst - burst presets
    """
    spec = parse_call(expr)
    if spec.name == "constant":
        noise = NoiseField.constant(spec.value("sigma", 0))
    elif spec.name == "burst":
        noise = NoiseField.indicator(
            spec.value("hi", 0), spec.value("lo", 1), spec.value("a", 2), spec.value("b", 3)
        )
    elif spec.name == "sin3":
        noise = NoiseField.sin3(spec.value("floor", 0, 1e-5))
    elif spec.name == "runge":
        noise = NoiseField.runge_shaped(spec.value("scale", 0, 1.0), spec.value("floor", 1, 0.0))
    elif spec.name in _BURST_PRESETS:
        noise = NoiseField.indicator(*_BURST_PRESETS[spec.name])
    else:
        raise ValueError(f"Unknown noise field: {spec.name}")
    if isinstance(dependence, str):
        dependence = parse_dependence(dependence)
    return noise.with_options(distribution=Distribution(distribution), dependence=dependence)
