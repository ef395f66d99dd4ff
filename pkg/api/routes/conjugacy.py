"""
conjugacy.py – Endpoints /conjugacy

- POST /conjugacy/search: busca un testigo (h, h′) entre Φ y Ψ.
- POST /conjugacy/check: verifica un testigo dado en el formato `h / --- / h′`.

Las respuestas siguen data/schema_verdict.json.
"""

from typing import Any, Dict

from fastapi import APIRouter
from pydantic import BaseModel, Field

from core.formats import parse_truth_table, parse_witness
from core.pipeline import AnalysisPipeline
from utils.logger import logger

router = APIRouter(
    prefix="/conjugacy",
    tags=["conjugacy"]
)


class PairRequest(BaseModel):
    phi: str = Field(..., description="Tabla de Φ en formato de texto")
    psi: str = Field(..., description="Tabla de Ψ en formato de texto")
    check_invariants: bool = False


class CheckRequest(PairRequest):
    witness: str = Field(..., description="Testigo: biyección h, línea '---', biyección h′")


@router.post("/search")
def search_endpoint(request: PairRequest) -> Dict[str, Any]:
    phi = parse_truth_table(request.phi, source="phi")
    psi = parse_truth_table(request.psi, source="psi")
    report = AnalysisPipeline().conjugate_report(phi, psi, check_invariants=request.check_invariants)
    logger.info(f"/conjugacy/search: equivalent={report['equivalent']}")
    return report


@router.post("/check")
def check_endpoint(request: CheckRequest) -> Dict[str, Any]:
    phi = parse_truth_table(request.phi, source="phi")
    psi = parse_truth_table(request.psi, source="psi")
    witness = parse_witness(request.witness, source="witness")
    return AnalysisPipeline().conjugate_report(phi, psi, witness, check_invariants=request.check_invariants)
