"""Integer budget allocation across Chebyshev nodes."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import ArrayLike

logger = logging.getLogger(__name__)

# Below this total the estimated variances carry no usable proportions.
DEGENERATE_VARIANCE_TOTAL = 1e-300


class AllocationMode(str, Enum):
    UNIFORM = "uniform"
    KNOWN_SIGMA = "proportional-known-sigma"
    ESTIMATED = "proportional-estimated"


@dataclass(frozen=True, eq=False)
class AllocationPlan:
    counts: np.ndarray
    budget: int
    mode: AllocationMode

    def __post_init__(self) -> None:
        counts = np.asarray(self.counts, dtype=np.int64)
        if np.any(counts < 0):
            raise ValueError("Sample counts must be nonnegative")
        if int(counts.sum()) != self.budget:
            raise ValueError(f"Counts sum to {int(counts.sum())}, budget is {self.budget}")
        counts.flags.writeable = False
        object.__setattr__(self, "counts", counts)

    def __len__(self) -> int:
        return self.counts.size


def largest_remainder(weights: ArrayLike, total: int) -> np.ndarray:
    """Hamilton apportionment of ``total`` proportionally to ``weights``.

    Every node gets the floor of its quota; the leftover units go to the
    largest fractional remainders, ties to the lower index.
    """
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or w.size == 0:
        raise ValueError("weights must be a nonempty vector")
    if np.any(w < 0) or not np.all(np.isfinite(w)):
        raise ValueError("weights must be finite and nonnegative")
    if total < 0:
        raise ValueError(f"total must be nonnegative, got {total}")
    wsum = w.sum()
    if wsum <= 0:
        raise ValueError("At least one weight must be positive")
    quotas = w * (total / wsum)
    counts = np.floor(quotas).astype(np.int64)
    remainders = quotas - counts
    extra = total - int(counts.sum())
    order = np.argsort(-remainders, kind="stable")
    while extra > 0:
        take = min(extra, w.size)
        counts[order[:take]] += 1
        extra -= take
    # quotas that rounded above the total: take back from the smallest remainders
    rev = [i for i in order[::-1] if counts[i] > 0]
    for i in rev[: max(-extra, 0)]:
        counts[i] -= 1
    return counts


def allocate_uniform(n_nodes: int, budget: int) -> AllocationPlan:
    """Spread ``budget`` as evenly as possible; earlier nodes take the remainder."""
    if n_nodes < 1:
        raise ValueError("Need at least one node")
    if budget < 0:
        raise ValueError("Budget must be nonnegative")
    counts = largest_remainder(np.ones(n_nodes), budget)
    return AllocationPlan(counts, budget, AllocationMode.UNIFORM)


def allocate_known_sigma(sigma_vec: ArrayLike, budget: int) -> AllocationPlan:
    """k_i proportional to sigma_i^2, every k_i >= 1, summing to ``budget``.

    Raises:
        ValueError: If the budget cannot give every node a sample, or if all
            sigma_i are zero.
    """
    sig = np.asarray(sigma_vec, dtype=float)
    if sig.ndim != 1 or sig.size == 0:
        raise ValueError("sigma_vec must be a nonempty vector")
    if np.any(sig < 0):
        raise ValueError("sigma_i must be nonnegative")
    if budget < sig.size:
        raise ValueError(
            f"Budget {budget} cannot give each of the {sig.size} nodes a sample"
        )
    if not np.any(sig > 0):
        raise ValueError("At least one sigma_i must be positive")
    counts = largest_remainder(sig * sig, budget)
    for i in np.flatnonzero(counts == 0):
        donor = int(np.argmax(counts))
        counts[donor] -= 1
        counts[i] = 1
    return AllocationPlan(counts, budget, AllocationMode.KNOWN_SIGMA)


def allocate_presampled(variances: ArrayLike, budget: int, presample: int) -> AllocationPlan:
    """Totals m + k_i where the k_i split the post-presample budget by S_i^2.

    Falls back to a uniform split when the variance estimates are all
    (numerically) zero.
    """
    s2 = np.asarray(variances, dtype=float)
    if s2.ndim != 1 or s2.size == 0:
        raise ValueError("variances must be a nonempty vector")
    if np.any(s2 < 0):
        raise ValueError("Sample variances must be nonnegative")
    remaining = budget - presample * s2.size
    if remaining < 0:
        raise ValueError(
            f"Pre-sampling {presample} x {s2.size} exceeds the budget {budget}"
        )
    if s2.sum() < DEGENERATE_VARIANCE_TOTAL:
        logger.debug("Variance estimates degenerate; splitting %d samples uniformly", remaining)
        extra = largest_remainder(np.ones(s2.size), remaining)
    else:
        extra = largest_remainder(s2, remaining)
    return AllocationPlan(extra + presample, budget, AllocationMode.ESTIMATED)
