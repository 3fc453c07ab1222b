"""FastAPI application entry point for hetero-chebtrunc."""

import logging
from importlib.metadata import PackageNotFoundError, version

from fastapi import FastAPI

from app.api import approximate, bounds
from app.models.responses import HealthResponse

logger = logging.getLogger("hetero-chebtrunc")

try:
    __version__ = version("hetero-chebtrunc")
except PackageNotFoundError:
    __version__ = "0.0.0-dev"


app = FastAPI(
    title="hetero-chebtrunc",
    description="Chebyshev approximation from noisy samples under heteroskedastic noise",
    version=__version__,
)

app.include_router(approximate.router)
app.include_router(bounds.router)


@app.get("/health")
async def health() -> HealthResponse:
    return HealthResponse(status="ok", engine="hetero-chebtrunc", version=__version__)
