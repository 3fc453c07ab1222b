"""Per-group statistics over trial records."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from app.domain.experiments.sweep import TrialRecord

# Across-trial quantiles of the uniform error, by linear interpolation between
# order statistics (numpy's "linear" method).
QUANTILES = (0.025, 0.975)
QUANTILE_METHOD = "linear"

DEFAULT_KEYS = ("algorithm", "N", "N_hat")


@dataclass(frozen=True)
class SummaryRow:
    group: dict[str, object]
    count: int
    failed: int
    mean_error: float
    q025_error: float
    q975_error: float
    mean_degree: float
    mean_time: float
    median_time: float

    def as_row(self, timing: bool = False) -> dict[str, object]:
        row = dict(self.group)
        row.update(
            count=self.count,
            failed=self.failed,
            mean_error=self.mean_error,
            q025_error=self.q025_error,
            q975_error=self.q975_error,
            mean_degree=self.mean_degree,
        )
        if timing:
            row.update(mean_time=self.mean_time, median_time=self.median_time)
        return row


def summary_columns(keys: Sequence[str] = DEFAULT_KEYS, timing: bool = False) -> list[str]:
    cols = [*keys, "count", "failed", "mean_error", "q025_error", "q975_error", "mean_degree"]
    if timing:
        cols += ["mean_time", "median_time"]
    return cols


def _group_value(record: TrialRecord, key: str) -> object:
    value = getattr(record, key)
    return getattr(value, "value", value)


def summarize(
    records: Sequence[TrialRecord], keys: Sequence[str] = DEFAULT_KEYS
) -> list[SummaryRow]:
    """One row per distinct ``keys`` tuple, in first-seen order.

    Failed trials are counted but excluded from every statistic.

    Raises:
        ValueError: If ``records`` is empty.
    """
    if not records:
        raise ValueError("Cannot summarize an empty record set")
    groups: dict[tuple, list[TrialRecord]] = {}
    for rec in records:
        groups.setdefault(tuple(_group_value(rec, k) for k in keys), []).append(rec)

    rows = []
    for group_key, block in groups.items():
        ok = [rec for rec in block if not rec.failed]
        if ok:
            errors = np.array([rec.sup_error for rec in ok])
            times = np.array([rec.wall_time for rec in ok])
            q_lo, q_hi = np.quantile(errors, QUANTILES, method=QUANTILE_METHOD)
            stats = (
                float(errors.mean()),
                float(q_lo),
                float(q_hi),
                float(np.mean([rec.chosen_degree for rec in ok])),
                float(times.mean()),
                float(np.median(times)),
            )
        else:
            stats = (math.nan,) * 6
        rows.append(
            SummaryRow(
                dict(zip(keys, group_key, strict=True)),
                len(block),
                len(block) - len(ok),
                *stats,
            )
        )
    return rows
