"""Monte-Carlo sweeps: algorithm x N x N_hat x trial, one fresh oracle per trial."""

from __future__ import annotations

import logging
import math
import time
from collections.abc import Iterable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import lru_cache
from itertools import groupby

import numpy as np

from app.domain.approximation import Algorithm, run_pipeline
from app.domain.experiments.config import ExperimentConfig
from app.modules.chebyshev import sup_error
from app.modules.noise import (
    Distribution,
    NoiseField,
    SamplingOracle,
    TargetFunction,
    derive_seed,
    parse_noise,
    parse_target,
)

logger = logging.getLogger(__name__)

# Stable per-algorithm seed keys; reordering a config's algorithm list must not change seeds.
ALGORITHM_CODES: dict[Algorithm, int] = {a: i for i, a in enumerate(Algorithm)}

RECORD_COLUMNS = [
    "algorithm",
    "N",
    "N_hat",
    "r",
    "trial",
    "seed",
    "chosen_degree",
    "sup_error",
    "samples_used",
    "error",
]
TIMING_COLUMNS = ["wall_time"]


@dataclass(frozen=True)
class TrialTask:
    """Everything a worker process needs to run one trial; strings only, so it pickles."""

    target: str
    noise: str
    distribution: Distribution
    dependence: str
    algorithm: Algorithm
    N: int
    N_hat: int
    r: float
    trial: int
    seed: int
    sup_resolution: int


@dataclass(frozen=True)
class TrialRecord:
    algorithm: Algorithm
    N: int
    N_hat: int
    r: float
    trial: int
    seed: int
    chosen_degree: int
    sup_error: float
    samples_used: int
    wall_time: float
    error: str = ""

    @property
    def failed(self) -> bool:
        return bool(self.error)

    @property
    def sort_key(self) -> tuple[int, int, int, int]:
        return (ALGORITHM_CODES[self.algorithm], self.N, self.N_hat, self.trial)

    def as_row(self, timing: bool = False) -> dict[str, object]:
        row = asdict(self)
        row["algorithm"] = self.algorithm.value
        if not timing:
            row.pop("wall_time")
        return row


def trial_seed(master_seed: int, algorithm: Algorithm, N: int, N_hat: int, trial: int) -> int:
    return derive_seed(master_seed, ALGORITHM_CODES[algorithm], N, N_hat, trial)


def build_tasks(config: ExperimentConfig) -> list[TrialTask]:
    tasks = []
    for algorithm in config.algorithms:
        for N in config.n_grid:
            # the plain pipeline interpolates at degree N whatever the rule says
            n_hats = [N] if algorithm is Algorithm.NOISY else config.n_hats_for(N)
            for N_hat in n_hats:
                for trial in range(config.trials):
                    tasks.append(
                        TrialTask(
                            target=config.target,
                            noise=config.noise,
                            distribution=config.distribution,
                            dependence=config.dependence,
                            algorithm=algorithm,
                            N=N,
                            N_hat=N_hat,
                            r=config.r,
                            trial=trial,
                            seed=trial_seed(config.master_seed, algorithm, N, N_hat, trial),
                            sup_resolution=config.sup_resolution,
                        )
                    )
    return tasks


@lru_cache(maxsize=32)
def _target(expr: str) -> TargetFunction:
    return parse_target(expr)


@lru_cache(maxsize=32)
def _noise(expr: str, distribution: Distribution, dependence: str) -> NoiseField:
    return parse_noise(expr, distribution, dependence)


def run_trial(task: TrialTask) -> TrialRecord:
    """Run one pipeline on a fresh oracle and measure its uniform error.

    Failures never propagate: they come back as a record with NaN error and
    the exception in ``error``.
    """
    try:
        target = _target(task.target)
        oracle = SamplingOracle(
            target, _noise(task.noise, task.distribution, task.dependence), task.seed
        )
        start = time.perf_counter()
        result = run_pipeline(task.algorithm, oracle, task.N, task.N_hat, task.r)
        wall = time.perf_counter() - start
        err = sup_error(target, result.series, task.sup_resolution)
    except Exception as exc:
        logger.warning(
            "Trial failed: %s N=%d N_hat=%d trial=%d",
            task.algorithm.value, task.N, task.N_hat, task.trial,
            exc_info=True,
        )
        return TrialRecord(
            algorithm=task.algorithm,
            N=task.N,
            N_hat=task.N_hat,
            r=task.r,
            trial=task.trial,
            seed=task.seed,
            chosen_degree=-1,
            sup_error=math.nan,
            samples_used=0,
            wall_time=math.nan,
            error=f"{type(exc).__name__}: {exc}",
        )
    return TrialRecord(
        algorithm=task.algorithm,
        N=task.N,
        N_hat=result.interpolant_degree,
        r=task.r,
        trial=task.trial,
        seed=task.seed,
        chosen_degree=result.chosen_degree,
        sup_error=err,
        samples_used=result.samples_used,
        wall_time=wall,
    )


def run_tasks(tasks: Iterable[TrialTask], workers: int = 1) -> list[TrialRecord]:
    task_list = list(tasks)
    if workers > 1 and len(task_list) > 1:
        chunksize = max(1, len(task_list) // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(run_trial, task_list, chunksize=chunksize))
    else:
        records = [run_trial(t) for t in task_list]
    records.sort(key=lambda rec: rec.sort_key)
    return records


def run_sweep(config: ExperimentConfig, workers: int = 1) -> list[TrialRecord]:
    """All trials of ``config``, sorted by (algorithm, N, N_hat, trial).

    Records depend only on the config and its master seed, never on
    ``workers`` or on completion order.
    """
    tasks = build_tasks(config)
    logger.info(
        "Sweep: %d trials (%s) over %d N values, workers=%d",
        len(tasks), ", ".join(a.value for a in config.algorithms), len(config.n_grid), workers,
    )
    records = run_tasks(tasks, workers)
    for (algorithm, N), block in groupby(records, key=lambda rec: (rec.algorithm, rec.N)):
        block = list(block)
        errors = [rec.sup_error for rec in block if not rec.failed]
        failed = len(block) - len(errors)
        logger.info(
            "%s N=%d: mean sup error %.3e over %d trials%s",
            algorithm.value, N, float(np.mean(errors)) if errors else math.nan, len(errors),
            f" ({failed} failed)" if failed else "",
        )
    return records
