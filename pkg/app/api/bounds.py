"""Bounds API: tabulate a concentration bound over a grid."""

from __future__ import annotations

from fastapi import APIRouter, HTTPException

from app.domain.experiments.bounds import BoundTableSpec, bound_table
from app.models.responses import BoundTableResponse

router = APIRouter(prefix="/api", tags=["bounds"])


@router.post("/bounds")
def bounds(spec: BoundTableSpec) -> BoundTableResponse:
    try:
        rows = bound_table(spec)
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    return BoundTableResponse(kind=spec.kind, columns=list(rows[0]) if rows else [], rows=rows)
