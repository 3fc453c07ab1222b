"""Runtime scaling study: pipeline wall time against N."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from app.domain.approximation import Algorithm
from app.domain.experiments.config import ExperimentConfig
from app.domain.experiments.sweep import run_sweep

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RuntimeRow:
    algorithm: Algorithm
    N: int
    trials: int
    median_time: float
    min_time: float

    def as_row(self) -> dict[str, object]:
        return {
            "algorithm": self.algorithm.value,
            "N": self.N,
            "trials": self.trials,
            "median_time": self.median_time,
            "min_time": self.min_time,
        }


@dataclass(frozen=True)
class LinearFit:
    slope: float
    intercept: float
    relative_residual: float


def fit_linear_time(ns: ArrayLike, times: ArrayLike) -> LinearFit:
    """Least-squares t = a N + b; residual is ||t - fit||_2 / ||t||_2."""
    n = np.asarray(ns, dtype=float)
    t = np.asarray(times, dtype=float)
    if n.shape != t.shape or n.size < 2:
        raise ValueError("Need at least two (N, time) pairs of matching length")
    design = np.column_stack([n, np.ones_like(n)])
    (slope, intercept), *_ = np.linalg.lstsq(design, t, rcond=None)
    fitted = design @ np.array([slope, intercept])
    norm = float(np.linalg.norm(t))
    residual = float(np.linalg.norm(t - fitted)) / norm if norm > 0 else 0.0
    return LinearFit(float(slope), float(intercept), residual)


def runtime_study(
    n_grid: Sequence[int],
    trials: int,
    target: str = "runge",
    noise: str = "right_half",
    algorithms: Sequence[Algorithm] = (Algorithm.NOISY, Algorithm.HETERO),
    master_seed: int | None = None,
) -> list[RuntimeRow]:
    """Median wall time per (algorithm, N), timed serially in this process."""
    overrides = {} if master_seed is None else {"master_seed": master_seed}
    config = ExperimentConfig(
        target=target,
        noise=noise,
        algorithms=list(algorithms),
        n_grid=list(n_grid),
        trials=trials,
        # the error measurement is not timed; keep it cheap
        sup_resolution=1001,
        **overrides,
    )
    records = run_sweep(config, workers=1)
    rows = []
    for algorithm in config.algorithms:
        for N in config.n_grid:
            times = [
                rec.wall_time
                for rec in records
                if rec.algorithm is algorithm and rec.N == N and not rec.failed
            ]
            if not times:
                logger.warning("No successful trials for %s at N=%d", algorithm.value, N)
                continue
            rows.append(
                RuntimeRow(algorithm, N, len(times), float(np.median(times)), float(min(times)))
            )
    return rows
