"""
errors.py – Jerarquía de excepciones del proyecto XiPhi

Este módulo:
  - Define la excepción raíz XiPhiError.
  - Separa errores de uso (UsageError), límites de capacidad (CapabilityError)
    y diagnósticos de formato de archivo (ParseError).
"""

from typing import Optional


class XiPhiError(Exception):
    """Excepción base de todos los errores controlados del proyecto."""


class UsageError(XiPhiError, ValueError):
    """Argumentos incompatibles: anchuras distintas, índices fuera de rango, h′ ∉ Ω_n, etc."""


class CapabilityError(XiPhiError):
    """La anchura pedida supera el tope soportado por la operación."""

    def __init__(self, operation: str, width: int, limit: int):
        self.operation = operation
        self.width = width
        self.limit = limit
        super().__init__(f"{operation}: anchura {width} fuera de capacidad (máximo {limit})")


class ParseError(XiPhiError):
    """
    Diagnóstico de formato de texto. `code` es un identificador estable
    (p. ej. "missing-input"); `line` y `column` empiezan en 1.
    """

    def __init__(self, code: str, message: str, line: Optional[int] = None, column: Optional[int] = None,
                 source: Optional[str] = None):
        self.code = code
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        super().__init__(self.render())

    def render(self) -> str:
        where = self.source or "<entrada>"
        if self.line is not None:
            where += f":{self.line}"
            if self.column is not None:
                where += f":{self.column}"
        return f"{where}: {self.code}: {self.message}"
