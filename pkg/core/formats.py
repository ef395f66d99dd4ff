"""
formats.py – Formatos de texto de tablas, biyecciones, testigos, funciones progresivas y familias

Este módulo:
  - Analiza los archivos de entrada del CLI y de la API, emitiendo ParseError con código
    estable, línea y columna.
  - Renderiza los mismos objetos de vuelta a texto de forma determinista.

Convenciones:
  - Las cadenas de bits se escriben con la coordenada 1 primero.
  - Las filas se emiten en orden creciente de codificación entera.
  - '#' inicia un comentario hasta fin de línea; las líneas en blanco se ignoran.

Tabla de verdad (la escalera de dos celdas, puntos fijos 00 y 11):

    n=2
    00 -> 00
    10 -> 11
    01 -> 10
    11 -> 11
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from core.boolean import MAX_WIDTH, State, TruthTable, UpdateMask, bits_to_text
from core.conjugacy import ConjugacyWitness
from core.errors import CapabilityError, ParseError
from core.omega import StateBijection
from core.bifurcation import MAX_PARAM_WIDTH, ParamFamily
from core.runs import LassoMaskSequence, ProgressiveFunction, Signal, PeriodicTail

_ROW = re.compile(r"^\s*(\S+)\s*->\s*(\S+)\s*$")
_HEADER = re.compile(r"^\s*n\s*=\s*(\d+)\s*$")
_FAMILY_HEADER = re.compile(r"^\s*n\s*=\s*(\d+)\s+m\s*=\s*(\d+)\s*$")
_LAMBDA = re.compile(r"^\s*lambda\s*=\s*(\S+)\s*$")
_FIELD = re.compile(r"^\s*(\w+)\s*:(.*)$")
_BITS = re.compile(r"^[01]+$")

WITNESS_SEPARATOR = "---"


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            yield number, line


def _parse_header(lines: list[tuple[int, str]], source: Optional[str]) -> int:
    if not lines:
        raise ParseError("header", "archivo vacío: falta la cabecera n=<n>", 1, 1, source)
    number, line = lines[0]
    match = _HEADER.match(line)
    if not match:
        raise ParseError("header", f"se esperaba 'n=<n>', encontrado '{line.strip()}'", number, 1, source)
    width = int(match.group(1))
    if width < 1:
        raise ParseError("header", "n debe ser al menos 1", number, 1, source)
    if width > MAX_WIDTH:
        raise CapabilityError("lectura de tabla", width, MAX_WIDTH)
    return width


def _parse_bits(token: str, width: int, number: int, column: int, source: Optional[str]) -> int:
    if not _BITS.match(token):
        raise ParseError("syntax", f"'{token}' no es una cadena de bits", number, column, source)
    if len(token) != width:
        raise ParseError("width-mismatch", f"'{token}' tiene {len(token)} bits, se esperaban {width}",
                         number, column, source)
    return sum(1 << i for i, ch in enumerate(token) if ch == "1")


def _parse_rows(lines: Sequence[tuple[int, str]], width: int, source: Optional[str],
                end_line: Optional[int]) -> list[int]:
    outputs: list[Optional[int]] = [None] * (1 << width)
    for number, line in lines:
        match = _ROW.match(line)
        if not match:
            raise ParseError("syntax", f"se esperaba '<bits> -> <bits>', encontrado '{line.strip()}'",
                             number, 1, source)
        key = _parse_bits(match.group(1), width, number, match.start(1) + 1, source)
        value = _parse_bits(match.group(2), width, number, match.start(2) + 1, source)
        if outputs[key] is not None:
            raise ParseError("duplicate-input", f"entrada {match.group(1)} repetida", number,
                             match.start(1) + 1, source)
        outputs[key] = value
    for key, value in enumerate(outputs):
        if value is None:
            raise ParseError("missing-input", f"falta la entrada {bits_to_text(key, width)}", end_line, None, source)
    return outputs


def parse_truth_table(text: str, source: Optional[str] = None) -> TruthTable:
    lines = list(_content_lines(text))
    width = _parse_header(lines, source)
    end_line = lines[-1][0] if lines else None
    return TruthTable(width, tuple(_parse_rows(lines[1:], width, source, end_line)))


def render_truth_table(phi: TruthTable) -> str:
    rows = [f"n={phi.width}"]
    rows.extend(f"{mu} -> {image}" for mu, image in phi.rows())
    return "\n".join(rows) + "\n"


def _bijection_from_lines(lines: list[tuple[int, str]], source: Optional[str]) -> StateBijection:
    width = _parse_header(lines, source)
    end_line = lines[-1][0] if lines else None
    forward = _parse_rows(lines[1:], width, source, end_line)
    seen: dict[int, int] = {}
    for number, line in lines[1:]:
        match = _ROW.match(line)
        image = _parse_bits(match.group(2), width, number, match.start(2) + 1, source)
        if image in seen:
            raise ParseError("not-bijective", f"la imagen {match.group(2)} se repite (ya en la línea {seen[image]})",
                             number, match.start(2) + 1, source)
        seen[image] = number
    return StateBijection(width, tuple(forward))


def parse_bijection(text: str, source: Optional[str] = None) -> StateBijection:
    return _bijection_from_lines(list(_content_lines(text)), source)


def render_bijection(h: StateBijection) -> str:
    return render_truth_table(TruthTable(h.width, h.forward))


def parse_witness(text: str, source: Optional[str] = None) -> ConjugacyWitness:
    """Biyección h, una línea '---' y la biyección h′."""
    lines = list(_content_lines(text))
    split = [i for i, (_, line) in enumerate(lines) if line.strip() == WITNESS_SEPARATOR]
    if len(split) != 1:
        number = lines[split[1]][0] if len(split) > 1 else (lines[-1][0] if lines else 1)
        raise ParseError("syntax", f"el testigo necesita exactamente una línea '{WITNESS_SEPARATOR}'",
                         number, 1, source)
    cut = split[0]
    h = _bijection_from_lines(lines[:cut], source)
    h_prime = _bijection_from_lines(lines[cut + 1:], source)
    return ConjugacyWitness(h, h_prime)


def render_witness(witness: ConjugacyWitness) -> str:
    return render_bijection(witness.h) + WITNESS_SEPARATOR + "\n" + render_bijection(witness.h_prime)


def _split_items(body: str) -> list[str]:
    return [item for item in re.split(r"[,\s]+", body.strip()) if item]


def parse_progressive_function(text: str, source: Optional[str] = None) -> ProgressiveFunction:
    """
    Cuatro campos, una vez cada uno y en cualquier orden:

        times: 0, 1/2, 2
        prefix: 10
        cycle: 01, 11
        period: 3
    """
    fields: dict[str, tuple[int, str, int]] = {}
    for number, line in _content_lines(text):
        match = _FIELD.match(line)
        if not match or match.group(1) not in {"times", "prefix", "cycle", "period"}:
            raise ParseError("syntax", f"línea no reconocida: '{line.strip()}'", number, 1, source)
        name = match.group(1)
        if name in fields:
            raise ParseError("syntax", f"campo '{name}' repetido", number, 1, source)
        fields[name] = (number, match.group(2), match.start(2) + 1)
    for name in ("times", "prefix", "cycle", "period"):
        if name not in fields:
            raise ParseError("syntax", f"falta el campo '{name}'", None, None, source)

    width: Optional[int] = None

    def masks(name: str) -> tuple[UpdateMask, ...]:
        nonlocal width
        number, body, column = fields[name]
        parsed = []
        for token in _split_items(body):
            if width is None:
                width = len(token)
            parsed.append(UpdateMask(_parse_bits(token, width, number, column, source), width))
        return tuple(parsed)

    prefix, cycle = masks("prefix"), masks("cycle")
    number, body, _ = fields["cycle"]
    if not cycle:
        raise ParseError("empty-cycle", "el ciclo de máscaras está vacío", number, None, source)
    union = 0
    for nu in cycle:
        union |= nu.bits
    if union != (1 << width) - 1:
        raise ParseError("cycle-not-progressive",
                         f"la unión del ciclo es {bits_to_text(union, width)}: no cubre todas las coordenadas",
                         number, None, source)

    number, body, column = fields["times"]
    times = []
    for token in _split_items(body):
        try:
            times.append(Fraction(token))
        except (ValueError, ZeroDivisionError):
            raise ParseError("syntax", f"'{token}' no es un racional", number, column, source)
    if len(times) != len(prefix) + len(cycle):
        raise ParseError("time-count", f"{len(times)} tiempos para {len(prefix) + len(cycle)} máscaras",
                         number, column, source)
    for a, b in zip(times, times[1:]):
        if not a < b:
            raise ParseError("non-increasing-times", f"{a} no es menor que {b}", number, column, source)

    number, body, column = fields["period"]
    try:
        period = Fraction(body.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError("bad-period", f"'{body.strip()}' no es un racional", number, column, source)
    if period <= 0 or not times[len(prefix)] + period > times[-1]:
        raise ParseError("bad-period", f"el periodo {period} no es mayor que la duración del ciclo",
                         number, column, source)
    return ProgressiveFunction(tuple(times), LassoMaskSequence(prefix, cycle), period)


def render_progressive_function(rho: ProgressiveFunction) -> str:
    return "\n".join([
        "times: " + ", ".join(str(t) for t in rho.times),
        "prefix: " + ", ".join(str(nu) for nu in rho.masks.prefix),
        "cycle: " + ", ".join(str(nu) for nu in rho.masks.cycle),
        f"period: {rho.period}",
    ]) + "\n"


def parse_family(text: str, source: Optional[str] = None) -> ParamFamily:
    """
    Cabecera 'n=<n> m=<m>' y un bloque por parámetro:

        lambda=<m bits>
        <2^n filas de tabla>
    """
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("header", "archivo vacío: falta la cabecera n=<n> m=<m>", 1, 1, source)
    number, line = lines[0]
    match = _FAMILY_HEADER.match(line)
    if not match:
        raise ParseError("header", f"se esperaba 'n=<n> m=<m>', encontrado '{line.strip()}'", number, 1, source)
    width, param_width = int(match.group(1)), int(match.group(2))
    if width < 1 or param_width < 1:
        raise ParseError("header", "n y m deben ser al menos 1", number, 1, source)
    if width > MAX_WIDTH:
        raise CapabilityError("lectura de familia", width, MAX_WIDTH)
    if param_width > MAX_PARAM_WIDTH:
        raise CapabilityError("lectura de familia", param_width, MAX_PARAM_WIDTH)

    blocks: dict[int, tuple[int, list[tuple[int, str]]]] = {}
    current: Optional[list[tuple[int, str]]] = None
    for number, line in lines[1:]:
        lam = _LAMBDA.match(line)
        if lam:
            key = _parse_bits(lam.group(1), param_width, number, lam.start(1) + 1, source)
            if key in blocks:
                raise ParseError("duplicate-lambda", f"lambda={lam.group(1)} repetido", number, 1, source)
            current = []
            blocks[key] = (number, current)
            continue
        if current is None:
            raise ParseError("syntax", "fila de tabla antes de la primera línea 'lambda='", number, 1, source)
        current.append((number, line))

    tables = []
    for key in range(1 << param_width):
        if key not in blocks:
            raise ParseError("missing-lambda", f"falta el bloque lambda={bits_to_text(key, param_width)}",
                             lines[-1][0], None, source)
        start, rows = blocks[key]
        end_line = rows[-1][0] if rows else start
        tables.append(TruthTable(width, tuple(_parse_rows(rows, width, source, end_line))))
    return ParamFamily(width, param_width, tuple(tables))


def render_family(family: ParamFamily) -> str:
    parts = [f"n={family.state_width} m={family.param_width}"]
    for lam in family.parameters():
        parts.append(f"lambda={lam}")
        parts.extend(f"{mu} -> {image}" for mu, image in family.member(lam).rows())
    return "\n".join(parts) + "\n"


def parse_state(text: str, width: Optional[int] = None) -> State:
    token = text.strip()
    if not _BITS.match(token):
        raise ParseError("syntax", f"'{token}' no es una cadena de bits")
    if width is not None and len(token) != width:
        raise ParseError("width-mismatch", f"'{token}' tiene {len(token)} bits, se esperaban {width}")
    return State.parse(token)


def render_signal(x: Signal) -> list[str]:
    """Intervalos [t_k, t_{k+1}) con su valor, seguidos de la descripción de la cola."""
    lines = []
    times = [t for t, _ in x.breakpoints]
    first = times[0] if times else (x.tail.start if isinstance(x.tail, PeriodicTail) else None)
    if first is None:
        return [f"(-inf, inf): {x.initial}"]
    lines.append(f"(-inf, {first}): {x.initial}")
    for index, (t, state) in enumerate(x.breakpoints):
        if index + 1 < len(times):
            end = str(times[index + 1])
        elif isinstance(x.tail, PeriodicTail):
            end = str(x.tail.start)
        else:
            end = "inf"
        lines.append(f"[{t}, {end}): {state}")
    if isinstance(x.tail, PeriodicTail):
        pattern = ", ".join(f"+{offset}: {state}" for offset, state in x.tail.pattern)
        lines.append(f"cola periódica desde {x.tail.start}, periodo {x.tail.period}: {pattern}")
    return lines
