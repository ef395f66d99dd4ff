"""
analysis.py – Endpoints /analysis para un único sistema Φ

Cada endpoint recibe la tabla de verdad en el formato de texto de data/*.tt
(`n=<n>` y filas `bits -> bits`) y delega en AnalysisPipeline, igual que el CLI.
Los errores de formato llegan al manejador de api/app.py como 422.
"""

from typing import Any, Dict, Literal, Optional

from fastapi import APIRouter
from pydantic import BaseModel, Field

from core.formats import parse_truth_table
from core.pipeline import AnalysisPipeline
from utils.logger import logger

router = APIRouter(
    prefix="/analysis",
    tags=["analysis"]
)


class TableRequest(BaseModel):
    table: str = Field(..., examples=["n=1\n0 -> 1\n1 -> 0\n"])


class TransitiveRequest(TableRequest):
    mode: Literal["exists", "forall"] = "exists"


class PortraitRequest(TableRequest):
    self_loops: Optional[bool] = None


class PortraitResponse(BaseModel):
    dot: str


@router.post("/fixed-points")
def fixed_points_endpoint(request: TableRequest) -> Dict[str, Any]:
    phi = parse_truth_table(request.table, source="table")
    logger.debug(f"/analysis/fixed-points sobre n={phi.width}")
    return AnalysisPipeline().fixed_points_report(phi)


@router.post("/nullclins")
def nullclins_endpoint(request: TableRequest) -> Dict[str, Any]:
    phi = parse_truth_table(request.table, source="table")
    return AnalysisPipeline().nullclins_report(phi)


@router.post("/transitive")
def transitive_endpoint(request: TransitiveRequest) -> Dict[str, Any]:
    phi = parse_truth_table(request.table, source="table")
    return AnalysisPipeline().transitive_report(phi, request.mode)


@router.post("/portrait", response_model=PortraitResponse)
def portrait_endpoint(request: PortraitRequest):
    phi = parse_truth_table(request.table, source="table")
    return PortraitResponse(dot=AnalysisPipeline().portrait(phi, request.self_loops))
