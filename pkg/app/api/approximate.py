"""Approximation API: one pipeline run on a fresh seeded oracle."""

from __future__ import annotations

import logging

from fastapi import APIRouter, HTTPException
from pydantic import BaseModel, Field

from app.domain.approximation import Algorithm, default_n_hat, run_pipeline
from app.domain.experiments.sweep import trial_seed
from app.infra.config import settings
from app.models.responses import ApproximationResponse
from app.modules.chebyshev import sup_error
from app.modules.noise import Distribution, SamplingOracle, parse_noise, parse_target

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api", tags=["approximate"])


class ApproximateRequest(BaseModel):
    target: str = "runge"
    noise: str = "right_half"
    distribution: Distribution = Distribution.NORMAL
    dependence: str = "independent"
    algorithm: Algorithm = Algorithm.HETERO
    N: int = Field(ge=1)
    N_hat: int | None = None
    r: float | None = None
    seed: int | None = None  # derived from the master seed when omitted
    sup_resolution: int | None = None


@router.post("/approximate")
def approximate(req: ApproximateRequest) -> ApproximationResponse:
    if req.N > settings.api_max_budget:
        raise HTTPException(
            status_code=400,
            detail=f"N={req.N} exceeds the API budget cap of {settings.api_max_budget}",
        )
    if req.algorithm is Algorithm.NOISY:
        N_hat = req.N
    else:
        N_hat = default_n_hat(req.N) if req.N_hat is None else req.N_hat
    r = settings.presample_fraction if req.r is None else req.r
    try:
        target = parse_target(req.target)
        noise = parse_noise(req.noise, req.distribution, req.dependence)
        seed = (
            req.seed
            if req.seed is not None
            else trial_seed(settings.master_seed, req.algorithm, req.N, N_hat, 0)
        )
        result = run_pipeline(req.algorithm, SamplingOracle(target, noise, seed), req.N, N_hat, r)
        err = sup_error(target, result.series, req.sup_resolution or settings.sup_resolution)
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    logger.info(
        "approximate %s N=%d N_hat=%d -> n=%d error=%.3e",
        req.algorithm.value, req.N, N_hat, result.chosen_degree, err,
    )
    return ApproximationResponse(
        algorithm=req.algorithm.value,
        target=target.label,
        noise=noise.label,
        N=req.N,
        N_hat=result.interpolant_degree,
        seed=seed,
        chosen_degree=result.chosen_degree,
        sup_error=err,
        samples_used=result.samples_used,
        noise_floor_estimate=result.noise_floor_estimate,
        presample_size=result.presample_size,
        coefficients=result.series.coeffs.tolist(),
        counts=result.plan.counts.tolist(),
    )
