"""Typed response models for OpenAPI schema generation."""

from __future__ import annotations

from pydantic import BaseModel


class HealthResponse(BaseModel):
    status: str
    engine: str
    version: str


# ── Approximation responses ───────────────────────────────────────


class ApproximationResponse(BaseModel):
    algorithm: str
    target: str
    noise: str
    N: int
    N_hat: int
    seed: int
    chosen_degree: int
    sup_error: float
    samples_used: int
    noise_floor_estimate: float
    presample_size: int
    coefficients: list[float]
    counts: list[int]


# ── Bound responses ───────────────────────────────────────────────


class BoundTableResponse(BaseModel):
    kind: str
    columns: list[str]
    rows: list[dict[str, float]]
