"""
validation.py – Validación de informes JSON contra los esquemas de data/

Este módulo:
  - Compila un validador Draft 7 por esquema (data/schema_<nombre>.json) y lo guarda en memoria.
  - Valida los informes que emiten el CLI y la API antes de publicarlos.
  - Informa el error más relevante (jsonschema.exceptions.best_match) junto con la ruta del
    campo que falla, p. ej. "counterexample.mask".
"""

import json
import os
import threading
from typing import Any, Dict

from jsonschema import Draft7Validator
from jsonschema.exceptions import SchemaError, best_match

from utils.logger import logger

SCHEMA_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data")

REPORT_SCHEMAS = ("verdict", "diagram", "run")

_VALIDATORS: Dict[str, Draft7Validator] = {}
_lock = threading.Lock()


class ValidationError(Exception):
    """Informe que no cumple su esquema. `path` es la ruta del campo ("" para la raíz)."""

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(message)


def schema_path(schema_name: str) -> str:
    return os.path.join(SCHEMA_DIR, f"schema_{schema_name}.json")


def load_schema(path: str) -> Dict[str, Any]:
    """
    Lee un esquema JSON.

    Raises:
        FileNotFoundError: Si el archivo no existe.
        json.JSONDecodeError: Si el archivo no es un JSON válido.
    """
    if not os.path.isfile(path):
        raise FileNotFoundError(f"No se encontró el archivo de esquema: {path}")
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def get_validator(schema_name: str) -> Draft7Validator:
    """Validador compilado para data/schema_<schema_name>.json, creado una sola vez."""
    with _lock:
        if schema_name in _VALIDATORS:
            return _VALIDATORS[schema_name]
    path = schema_path(schema_name)
    try:
        schema = load_schema(path)
        Draft7Validator.check_schema(schema)
    except (FileNotFoundError, json.JSONDecodeError, SchemaError) as e:
        msg = f"Error cargando esquema '{schema_name}' desde '{path}': {e}"
        logger.error(msg)
        raise ValidationError(msg)
    with _lock:
        validator = _VALIDATORS.setdefault(schema_name, Draft7Validator(schema))
    logger.debug(f"Validador compilado para el esquema '{schema_name}'")
    return validator


def _check(validator: Draft7Validator, document: Any) -> bool:
    error = best_match(validator.iter_errors(document))
    if error is None:
        return True
    path = ".".join(str(part) for part in error.absolute_path)
    msg = f"Informe inválido en {path}: {error.message}" if path else f"Informe inválido: {error.message}"
    logger.error(msg)
    raise ValidationError(msg, path)


def validate_document(document: Any, schema: Dict[str, Any]) -> bool:
    """Valida contra un esquema dado como dict (sin caché)."""
    return _check(Draft7Validator(schema), document)


def validate_report(report: Dict[str, Any], schema_name: str) -> bool:
    """Valida un informe contra data/schema_<schema_name>.json."""
    return _check(get_validator(schema_name), report)


def clear_schema_cache():
    with _lock:
        _VALIDATORS.clear()
    logger.debug("Cache de validadores limpiado.")
