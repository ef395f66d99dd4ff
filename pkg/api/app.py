"""
api/app.py – Punto de entrada de la API de análisis

Este script inicializa la aplicación FastAPI, registra los routers de api/routes y traduce
las excepciones del dominio a respuestas HTTP.

- Middleware de logging de cada solicitud.
- Registro dinámico de routers desde la carpeta api/routes.
- ParseError y UsageError → 422; CapabilityError → 400; el resto → 500.
"""

import os
import sys

import uvicorn
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from core.errors import CapabilityError, ParseError, UsageError
from utils.logger import logger

app = FastAPI(
    title="XiPhi – API",
    description="Análisis de sistemas asíncronos booleanos: puntos fijos, transitividad, equivalencia.",
    version="1.0",
)


@app.middleware("http")
async def log_requests(request: Request, call_next):
    logger.info(f"Solicitud entrante: {request.method} {request.url}")
    response = await call_next(request)
    logger.info(f"Respuesta: status code {response.status_code}")
    return response


@app.exception_handler(ParseError)
async def parse_error_handler(request: Request, exc: ParseError):
    logger.error(f"Error de formato: {exc}")
    return JSONResponse(
        status_code=422,
        content={"detail": exc.render(), "code": exc.code, "line": exc.line, "column": exc.column},
    )


@app.exception_handler(UsageError)
async def usage_error_handler(request: Request, exc: UsageError):
    logger.error(f"Error de uso: {exc}")
    return JSONResponse(status_code=422, content={"detail": str(exc)})


@app.exception_handler(CapabilityError)
async def capability_error_handler(request: Request, exc: CapabilityError):
    logger.error(f"Capacidad excedida: {exc}")
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.exception_handler(Exception)
async def global_exception_handler(request: Request, exc: Exception):
    logger.error(f"Error no controlado: {exc}", exc_info=True)
    return JSONResponse(
        status_code=500,
        content={"detail": "Ocurrió un error inesperado en el servidor."},
    )


def include_routes():
    """
    Incluye todos los routers disponibles en la carpeta api/routes.
    Cada archivo de api/routes define un objeto "router" de FastAPI.
    """
    from pathlib import Path
    import importlib

    routes_path = Path(__file__).parent / "routes"
    for route_file in sorted(routes_path.glob("*.py")):
        if route_file.name.startswith("__"):
            continue
        module_name = f"api.routes.{route_file.stem}"
        module = importlib.import_module(module_name)
        if hasattr(module, "router"):
            app.include_router(module.router)
            logger.info(f"Incluido router: {module_name}")


include_routes()

if __name__ == "__main__":
    uvicorn.run("api.app:app", host=os.getenv("UVICORN_HOST", "0.0.0.0"),
                port=int(os.getenv("UVICORN_PORT", 8000)), reload=False)
