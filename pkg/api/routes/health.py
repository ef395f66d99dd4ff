# api/routes/health.py

import os
from typing import List

from fastapi import APIRouter
from pydantic import BaseModel

from core.config import get_config
from utils.logger import logger
from utils.metrics import get_all_metrics
from utils.validation import REPORT_SCHEMAS, SCHEMA_DIR

router = APIRouter(
    prefix="/health",
    tags=["health"]
)


class HealthStatus(BaseModel):
    service: str
    status: str
    detail: str = ""


class OverallHealth(BaseModel):
    overall_status: str
    checks: List[HealthStatus]


@router.get("/", response_model=OverallHealth)
async def health_check():
    """
    Estado del servicio: configuración cargada, esquemas de informes disponibles y
    métricas registradas hasta el momento.
    """
    logger.info("Iniciando chequeo de salud del sistema...")
    checks = []

    try:
        config = get_config()
        checks.append(HealthStatus(service="config", status="UP",
                                   detail=f"jobs={config.jobs} format={config.output_format}"))
    except RuntimeError as e:
        checks.append(HealthStatus(service="config", status="DOWN", detail=str(e)))

    missing = [name for name in REPORT_SCHEMAS
               if not os.path.isfile(os.path.join(SCHEMA_DIR, f"schema_{name}.json"))]
    checks.append(HealthStatus(
        service="schemas",
        status="DOWN" if missing else "UP",
        detail=f"faltan: {', '.join(missing)}" if missing else "schema_verdict, schema_diagram, schema_run",
    ))

    metrics = get_all_metrics()
    checks.append(HealthStatus(service="metrics", status="UP",
                               detail=f"{len(metrics.get('counters', {}))} contadores"))

    overall = "UP" if all(c.status == "UP" for c in checks) else "DEGRADED"
    logger.info(f"Estado general de salud: {overall}")
    return OverallHealth(overall_status=overall, checks=checks)
