"""Bound tables: tabulate the concentration-bound evaluators over a parameter grid."""

from __future__ import annotations

from typing import Annotated, Literal, Union

import numpy as np
from pydantic import BaseModel, Field, TypeAdapter, model_validator

from app.modules.chebyshev import chebyshev_points
from app.modules.noise import parse_noise
from app.modules.stats import (
    BoundInputs,
    BoundResult,
    dependent_bound,
    hetero_thm_prob,
    lemma1_params,
    prop1_log_bound,
    thm1_prob,
    thm2_prob,
)


class TGrid(BaseModel):
    """Evaluation points: an explicit list, or ``points`` evenly spaced in [t_min, t_max]."""

    t_values: list[float] | None = None
    t_min: float = 0.0
    t_max: float = 4.0
    points: int = Field(default=41, ge=1)

    def grid(self) -> np.ndarray:
        if self.t_values is not None:
            values = np.asarray(self.t_values, dtype=float)
        else:
            values = np.linspace(self.t_min, self.t_max, self.points)
        if values.size == 0 or np.any(values < 0):
            raise ValueError("t values must be nonnegative and nonempty")
        return values


class SigmaSource(BaseModel):
    """sigma at the nodes: explicit, or read off a noise spec at the degree-N_hat grid."""

    sigma_vec: list[float] | None = None
    noise: str | None = None

    def sigmas(self, N_hat: int) -> np.ndarray:
        if (self.sigma_vec is None) == (self.noise is None):
            raise ValueError("Give exactly one of sigma_vec or noise")
        if self.sigma_vec is not None:
            return np.asarray(self.sigma_vec, dtype=float)
        return parse_noise(self.noise).sigma(chebyshev_points(N_hat).points)


class Lemma1Table(TGrid):
    kind: Literal["lemma1"] = "lemma1"
    sigma: float = 1.0
    m: int = 100


class Prop1Table(SigmaSource):
    kind: Literal["prop1"] = "prop1"
    N_hat: int = 4
    m: int = 100
    s_values: list[float] = Field(default_factory=lambda: [0.1, 0.2, 0.3, 0.4, 0.5, 0.7, 0.9])


class _ErrorBoundTable(TGrid, SigmaSource):
    N: int
    N_hat: int
    n: int
    r_n_inf: float = 0.0

    def inputs(self, t: float, **extra: float) -> BoundInputs:
        return BoundInputs(
            sigma_vec=tuple(self.sigmas(self.N_hat)),
            N=self.N,
            N_hat=self.N_hat,
            n=self.n,
            t=float(t),
            r_n_inf=self.r_n_inf,
            **extra,
        )


class Thm1Table(_ErrorBoundTable):
    kind: Literal["thm1"] = "thm1"


class Thm2Table(_ErrorBoundTable):
    kind: Literal["thm2"] = "thm2"
    nu_vec: list[float] | None = None  # defaults to sigma_vec
    alpha_max: float = 1.0
    t_star: float = 1.0


class HeteroTable(_ErrorBoundTable):
    kind: Literal["hetero"] = "hetero"
    r: float = 0.1
    s: float = 0.0


class DependentTable(TGrid, SigmaSource):
    kind: Literal["dependent"] = "dependent"
    N: int
    N_hat: int
    q_inf: float = 0.0

    @model_validator(mode="after")
    def _check_degrees(self) -> DependentTable:
        if self.N_hat < 1 or self.N < 1:
            raise ValueError("N_hat and N must be positive")
        return self


BoundTableSpec = Annotated[
    Union[Lemma1Table, Prop1Table, Thm1Table, Thm2Table, HeteroTable, DependentTable],
    Field(discriminator="kind"),
]

BOUND_TABLE_ADAPTER: TypeAdapter[BoundTableSpec] = TypeAdapter(BoundTableSpec)

BOUND_KINDS = ("lemma1", "prop1", "thm1", "thm2", "hetero", "dependent")


def _result_row(
    grid_key: str, grid_value: float, result: BoundResult, **extra: float
) -> dict[str, float]:
    return {
        grid_key: float(grid_value),
        "threshold": result.threshold,
        "probability_raw": result.probability_raw,
        "probability_clamped": result.probability,
        "log_probability": result.log_probability,
        **extra,
    }


def bound_table(spec: BoundTableSpec | dict) -> list[dict[str, float]]:
    """Rows of (grid value, threshold, raw and clamped probability, log-probability, extras).

    ``spec`` may be a table model or a plain dict with a ``kind`` key.
    Evaluator errors propagate as ``ValueError``.
    """
    if isinstance(spec, dict):
        spec = BOUND_TABLE_ADAPTER.validate_python(spec)

    if isinstance(spec, Lemma1Table):
        p = lemma1_params(spec.sigma, spec.m)
        return [
            _result_row(
                "t", t, BoundResult(float(t), p.log_tail(float(t))), nu=p.nu, alpha=p.alpha
            )
            for t in spec.grid()
        ]

    if isinstance(spec, Prop1Table):
        sig = spec.sigmas(spec.N_hat)
        return [
            _result_row("s", s, BoundResult(float(s), prop1_log_bound(s, sig, spec.m)), m=spec.m)
            for s in spec.s_values
        ]

    if isinstance(spec, Thm1Table | HeteroTable | Thm2Table):
        rows = []
        for t in spec.grid():
            if isinstance(spec, HeteroTable):
                result = hetero_thm_prob(spec.inputs(t, r=spec.r, s=spec.s))
            elif isinstance(spec, Thm2Table):
                inputs = spec.inputs(t)
                nu = spec.nu_vec if spec.nu_vec is not None else inputs.sigma_vec
                result = thm2_prob(inputs, nu, spec.alpha_max, spec.t_star)
            else:
                result = thm1_prob(spec.inputs(t))
            rows.append(_result_row("t", t, result))
        return rows

    sig = spec.sigmas(spec.N_hat)
    return [
        _result_row("t", t, dependent_bound(spec.N_hat, spec.N, sig, spec.q_inf, float(t)))
        for t in spec.grid()
    ]
