"""Approximation pipelines, budget allocation and degree selection."""

from app.domain.approximation.allocation import (
    AllocationMode,
    AllocationPlan,
    allocate_known_sigma,
    allocate_presampled,
    allocate_uniform,
    largest_remainder,
)
from app.domain.approximation.pipelines import (
    DEFAULT_PRESAMPLE_FRACTION,
    Algorithm,
    ApproxResult,
    default_n_hat,
    hetero_chebtrunc,
    noisy_chebtrunc,
    presample_size,
    repeated_chebtrunc,
    run_pipeline,
    weighted_chebtrunc_known,
)
from app.domain.approximation.selection import (
    cp_scores,
    mallows_cp_select,
    residual_sums,
    tail_noise_floor,
)

__all__ = [
    "DEFAULT_PRESAMPLE_FRACTION",
    "Algorithm",
    "AllocationMode",
    "AllocationPlan",
    "ApproxResult",
    "allocate_known_sigma",
    "allocate_presampled",
    "allocate_uniform",
    "cp_scores",
    "default_n_hat",
    "hetero_chebtrunc",
    "largest_remainder",
    "mallows_cp_select",
    "noisy_chebtrunc",
    "presample_size",
    "repeated_chebtrunc",
    "residual_sums",
    "run_pipeline",
    "tail_noise_floor",
    "weighted_chebtrunc_known",
]
