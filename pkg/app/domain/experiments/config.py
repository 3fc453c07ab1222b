"""Experiment configuration: the flat ``key = value`` file format and its validated model.

Grammar (one setting per line, ``#`` starts a comment, blank lines ignored)::

    target      = runge | chebt(d) | poly(c0, c1, ...) | zero
    noise       = constant(0.1) | burst(hi=1, lo=1e-5, a=0, b=0.1) | right_half | ...
    distribution = normal | uniform
    dependence  = independent | shared(w=0.5)
    algorithms  = noisy, weighted_known, hetero
    n_grid      = logspace(100, 1e6, 40) | 100, 1000, 10000
    n_hat_rule  = sqrt | fixed(100) | factor(0.5)
    n_hat_grid  = 100, 1000            # optional, overrides n_hat_rule
    trials      = 50
    r           = 0.1
    master_seed = 20240601
    sup_resolution = 10001
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.domain.approximation import Algorithm, presample_size
from app.infra.config import settings
from app.modules.noise import (
    Distribution,
    NoiseField,
    TargetFunction,
    parse_dependence,
    parse_noise,
    parse_target,
)
from app.modules.noise.grammar import parse_call

logger = logging.getLogger(__name__)

MIN_N = 10


@dataclass(frozen=True)
class NHatRule:
    """How the interpolation degree N_hat follows from the budget N."""

    kind: str  # sqrt | fixed | factor
    value: float = 1.0

    def resolve(self, N: int) -> int:
        if self.kind == "fixed":
            return int(self.value)
        return max(1, math.floor(self.value * math.sqrt(N)))

    def render(self) -> str:
        if self.kind == "sqrt":
            return "sqrt"
        v = int(self.value) if float(self.value).is_integer() else self.value
        return f"{self.kind}({v})"

    @classmethod
    def parse(cls, expr: str) -> NHatRule:
        spec = parse_call(expr)
        if spec.name == "sqrt":
            return cls("sqrt")
        if spec.name == "fixed":
            v = spec.value("value", 0)
            if v < 1 or not float(v).is_integer():
                raise ValueError(f"fixed() needs a positive integer, got {v}")
            return cls("fixed", v)
        if spec.name == "factor":
            c = spec.value("c", 0)
            if c <= 0:
                raise ValueError(f"factor() needs a positive multiplier, got {c}")
            return cls("factor", c)
        raise ValueError(f"Unknown N_hat rule: {spec.name}")


def logspace_grid(lo: float, hi: float, count: int) -> list[int]:
    """``count`` log-spaced integers in [lo, hi], rounded and deduplicated."""
    if lo <= 0 or hi < lo:
        raise ValueError(f"logspace() needs 0 < min <= max, got ({lo}, {hi})")
    if count < 1:
        raise ValueError(f"logspace() needs a positive count, got {count}")
    values = np.rint(np.logspace(math.log10(lo), math.log10(hi), int(count))).astype(np.int64)
    return sorted({int(v) for v in values})


def parse_int_list(text: str) -> list[int]:
    out = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        value = float(token)
        if not value.is_integer():
            raise ValueError(f"Expected an integer, got {token!r}")
        out.append(int(value))
    if not out:
        raise ValueError("Empty list")
    return out


def parse_n_grid(text: str) -> list[int]:
    """``logspace(min, max, count)`` or an explicit comma-separated list."""
    if text.strip().lower().startswith("logspace"):
        spec = parse_call(text)
        lo, hi = spec.value("min", 0), spec.value("max", 1)
        return logspace_grid(lo, hi, int(spec.value("count", 2)))
    return sorted(set(parse_int_list(text)))


class ExperimentConfig(BaseModel):
    """A validated Monte-Carlo sweep description.

    Validation resolves every (N, N_hat) pair and checks each pipeline's
    preconditions, so a config that constructs cleanly never fails on a
    budget precondition mid-sweep.
    """

    model_config = ConfigDict(validate_default=True)

    target: str = "runge"
    noise: str = "right_half"
    distribution: Distribution = Distribution.NORMAL
    dependence: str = "independent"
    algorithms: list[Algorithm] = Field(
        default_factory=lambda: [Algorithm.NOISY, Algorithm.WEIGHTED_KNOWN]
    )
    n_grid: list[int] = Field(default_factory=lambda: logspace_grid(100, 1e6, 40))
    trials: int = 50
    n_hat_rule: str = "sqrt"
    n_hat_grid: list[int] | None = None
    r: float = Field(default_factory=lambda: settings.presample_fraction)
    master_seed: int = Field(default_factory=lambda: settings.master_seed)
    sup_resolution: int = Field(default_factory=lambda: settings.sup_resolution)

    @field_validator("target")
    @classmethod
    def _canonical_target(cls, v: str) -> str:
        return parse_target(v).label

    @field_validator("noise")
    @classmethod
    def _canonical_noise(cls, v: str) -> str:
        return parse_noise(v).label

    @field_validator("dependence")
    @classmethod
    def _canonical_dependence(cls, v: str) -> str:
        return parse_dependence(v).label

    @field_validator("n_hat_rule")
    @classmethod
    def _canonical_rule(cls, v: str) -> str:
        return NHatRule.parse(v).render()

    @field_validator("algorithms")
    @classmethod
    def _unique_algorithms(cls, v: list[Algorithm]) -> list[Algorithm]:
        if not v:
            raise ValueError("At least one algorithm is required")
        return list(dict.fromkeys(v))

    @field_validator("n_grid")
    @classmethod
    def _check_grid(cls, v: list[int]) -> list[int]:
        if not v:
            raise ValueError("n_grid is empty")
        small = [n for n in v if n < MIN_N]
        if small:
            raise ValueError(f"Every N must be at least {MIN_N}, got {small}")
        return sorted(set(v))

    @field_validator("trials")
    @classmethod
    def _check_trials(cls, v: int) -> int:
        if v < 1:
            raise ValueError(f"trials must be at least 1, got {v}")
        return v

    @field_validator("sup_resolution")
    @classmethod
    def _check_resolution(cls, v: int) -> int:
        if v < 2:
            raise ValueError(f"sup_resolution must be at least 2, got {v}")
        return v

    @model_validator(mode="after")
    def _check_preconditions(self) -> ExperimentConfig:
        if not 0.0 < self.r < 1.0:
            raise ValueError(f"r must lie in (0, 1), got {self.r}")
        if self.algorithms == [Algorithm.NOISY]:
            return self
        for N in self.n_grid:
            for N_hat in self.n_hats_for(N):
                if not 1 <= N_hat <= N:
                    raise ValueError(f"N_hat={N_hat} is not in [1, N] for N={N}")
                if Algorithm.HETERO in self.algorithms:
                    presample_size(N, N_hat, self.r)
        return self

    # --- derived objects ---

    @property
    def rule(self) -> NHatRule:
        return NHatRule.parse(self.n_hat_rule)

    def n_hats_for(self, N: int) -> list[int]:
        if self.n_hat_grid:
            return list(self.n_hat_grid)
        return [self.rule.resolve(N)]

    def target_function(self) -> TargetFunction:
        return parse_target(self.target)

    def noise_field(self) -> NoiseField:
        return parse_noise(self.noise, self.distribution, self.dependence)

    def render(self) -> str:
        """The config in file format; ``parse_config(cfg.render()) == cfg``."""
        lines = [
            f"target = {self.target}",
            f"noise = {self.noise}",
            f"distribution = {self.distribution.value}",
            f"dependence = {self.dependence}",
            f"algorithms = {', '.join(a.value for a in self.algorithms)}",
            f"n_grid = {', '.join(str(n) for n in self.n_grid)}",
            f"n_hat_rule = {self.n_hat_rule}",
            f"trials = {self.trials}",
            f"r = {self.r!r}",
            f"master_seed = {self.master_seed}",
            f"sup_resolution = {self.sup_resolution}",
        ]
        if self.n_hat_grid:
            lines.append(f"n_hat_grid = {', '.join(str(n) for n in self.n_hat_grid)}")
        return "\n".join(lines) + "\n"


_LIST_KEYS = {"algorithms"}
_KNOWN_KEYS = set(ExperimentConfig.model_fields)


def parse_config(text: str) -> ExperimentConfig:
    """Parse the flat key-value format into a validated config.

    Raises:
        ValueError: On unknown or duplicate keys, malformed lines, or any
            validation failure.
    """
    raw: dict[str, object] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"Line {lineno}: expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lower()
        if key not in _KNOWN_KEYS:
            raise ValueError(f"Line {lineno}: unknown key {key!r}")
        if key in raw:
            raise ValueError(f"Line {lineno}: duplicate key {key!r}")
        if not value:
            raise ValueError(f"Line {lineno}: empty value for {key!r}")
        if key in _LIST_KEYS:
            raw[key] = [v.strip() for v in value.split(",") if v.strip()]
        elif key == "n_grid":
            raw[key] = parse_n_grid(value)
        elif key == "n_hat_grid":
            raw[key] = parse_int_list(value)
        else:
            raw[key] = value
    config = ExperimentConfig.model_validate(raw)
    logger.debug("Parsed config: %d N values x %d trials", len(config.n_grid), config.trials)
    return config


def load_config(path: str | Path) -> ExperimentConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"))
