"""Target functions, noise fields and the sampling oracle."""

from app.modules.noise.field import (
    INDEPENDENT,
    Dependence,
    Distribution,
    NoiseField,
    NoiseKind,
    parse_dependence,
    parse_noise,
    sigma_at,
)
from app.modules.noise.oracle import SampleSummary, SamplingOracle, derive_seed
from app.modules.noise.targets import TargetFunction, parse_target

__all__ = [
    "INDEPENDENT",
    "Dependence",
    "Distribution",
    "NoiseField",
    "NoiseKind",
    "SampleSummary",
    "SamplingOracle",
    "TargetFunction",
    "derive_seed",
    "parse_dependence",
    "parse_noise",
    "parse_target",
    "sigma_at",
]
