"""
boolean.py – Núcleo booleano: estados, máscaras de actualización y tablas de verdad

Este módulo:
  - Representa estados μ ∈ B^n y máscaras ν ∈ B^n como enteros con la codificación
    Σ μ_i·2^(i−1) (la coordenada 1 es el bit menos significativo).
  - Representa funciones Φ: B^n → B^n como tablas de verdad completas.
  - Implementa la actualización enmascarada Φ^ν, su composición sobre prefijos,
    nullclinas y puntos fijos.

Las cadenas de bits se escriben con la coordenada 1 primero: el estado (μ1, μ2) = (0, 1)
se escribe "01" y su codificación entera es 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Mapping, Sequence

from core.errors import CapabilityError, UsageError

MAX_WIDTH = 16


def step_bits(outputs: Sequence[int], nu: int, mu: int) -> int:
    """Φ^ν(μ) sobre enteros: las coordenadas de ν toman el valor de Φ, el resto se conservan."""
    return (mu & ~nu) | (outputs[mu] & nu)


def bits_to_text(bits: int, width: int) -> str:
    return "".join("1" if bits >> i & 1 else "0" for i in range(width))


def text_to_bits(text: str) -> int:
    value = 0
    for i, ch in enumerate(text):
        if ch == "1":
            value |= 1 << i
        elif ch != "0":
            raise UsageError(f"Carácter no binario '{ch}' en '{text}'")
    return value


def _check_width(width: int) -> None:
    if width < 1:
        raise UsageError(f"La anchura debe ser al menos 1 (recibido {width})")
    if width > MAX_WIDTH:
        raise CapabilityError("núcleo booleano", width, MAX_WIDTH)


@dataclass(frozen=True, slots=True, order=True)
class State:
    """Un punto μ = (μ1, …, μn) de B^n."""

    bits: int
    width: int

    def __post_init__(self):
        _check_width(self.width)
        if not 0 <= self.bits < (1 << self.width):
            raise UsageError(f"Codificación {self.bits} fuera de rango para anchura {self.width}")

    @classmethod
    def from_coords(cls, coords: Sequence[int]):
        bits = 0
        for i, value in enumerate(coords):
            if value not in (0, 1):
                raise UsageError(f"Coordenada {i + 1} no binaria: {value}")
            bits |= value << i
        return cls(bits, len(coords))

    @classmethod
    def parse(cls, text: str):
        text = text.strip()
        return cls(text_to_bits(text), len(text))

    @classmethod
    def zero(cls, width: int):
        return cls(0, width)

    @classmethod
    def top(cls, width: int):
        return cls((1 << width) - 1, width)

    def coordinate(self, i: int) -> int:
        """Valor de la coordenada i (1 ≤ i ≤ n)."""
        if not 1 <= i <= self.width:
            raise UsageError(f"Índice de coordenada {i} fuera de 1..{self.width}")
        return self.bits >> (i - 1) & 1

    def coords(self) -> tuple[int, ...]:
        return tuple(self.bits >> i & 1 for i in range(self.width))

    def is_top(self) -> bool:
        return self.bits == (1 << self.width) - 1

    def __str__(self) -> str:
        return bits_to_text(self.bits, self.width)


@dataclass(frozen=True, slots=True, order=True)
class UpdateMask(State):
    """ν ∈ B^n: ν_i = 1 selecciona la coordenada i para actualizarse."""

    def selected(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.width) if self.bits >> i & 1)

    def is_zero(self) -> bool:
        return self.bits == 0


MaskSequencePrefix = Sequence[UpdateMask]


@dataclass(frozen=True, slots=True)
class TruthTable:
    """
    Tabla completa de Φ: `outputs[k]` es la codificación de Φ(μ) para el estado de
    codificación k.
    """

    width: int
    outputs: tuple[int, ...]

    def __post_init__(self):
        _check_width(self.width)
        size = 1 << self.width
        if len(self.outputs) != size:
            raise UsageError(f"Tabla incompleta: {len(self.outputs)} filas para {size} entradas")
        for k, out in enumerate(self.outputs):
            if not 0 <= out < size:
                raise UsageError(f"Salida {out} fuera de rango en la fila {bits_to_text(k, self.width)}")

    @classmethod
    def from_states(cls, rows: Mapping[State, State]) -> "TruthTable":
        if not rows:
            raise UsageError("Se requiere al menos una fila")
        width = next(iter(rows)).width
        outputs = [None] * (1 << width)
        for mu, image in rows.items():
            if mu.width != width or image.width != width:
                raise UsageError("Filas de anchuras distintas")
            outputs[mu.bits] = image.bits
        missing = [bits_to_text(k, width) for k, out in enumerate(outputs) if out is None]
        if missing:
            raise UsageError(f"Faltan entradas: {', '.join(missing)}")
        return cls(width, tuple(outputs))

    @classmethod
    def from_function(cls, width: int, fn: Callable[[tuple[int, ...]], Sequence[int]]) -> "TruthTable":
        """Construye la tabla evaluando `fn` sobre las coordenadas (μ1, …, μn) de cada estado."""
        _check_width(width)
        outputs = []
        for k in range(1 << width):
            coords = tuple(k >> i & 1 for i in range(width))
            outputs.append(State.from_coords(tuple(fn(coords))).bits)
        return cls(width, tuple(outputs))

    @classmethod
    def identity(cls, width: int) -> "TruthTable":
        _check_width(width)
        return cls(width, tuple(range(1 << width)))

    @classmethod
    def constant(cls, value: State) -> "TruthTable":
        return cls(value.width, (value.bits,) * (1 << value.width))

    @property
    def size(self) -> int:
        return 1 << self.width

    def __call__(self, mu: State) -> State:
        _same_width(self.width, mu)
        return State(self.outputs[mu.bits], self.width)

    def is_identity(self) -> bool:
        return all(out == k for k, out in enumerate(self.outputs))

    def rows(self) -> Iterator[tuple[State, State]]:
        for k, out in enumerate(self.outputs):
            yield State(k, self.width), State(out, self.width)

    def fingerprint(self) -> str:
        return f"{self.width}:" + ".".join(format(out, "x") for out in self.outputs)


def _same_width(width: int, *values: State) -> None:
    for value in values:
        if value.width != width:
            raise UsageError(f"Anchura incompatible: se esperaba {width}, recibido {value.width}")


def apply_masked(phi: TruthTable, nu: UpdateMask, mu: State) -> State:
    """Φ^ν(μ)_i = Φ_i(μ) si ν_i = 1, μ_i en otro caso."""
    _same_width(phi.width, nu, mu)
    return State(step_bits(phi.outputs, nu.bits, mu.bits), phi.width)


def iterate(phi: TruthTable, prefix: MaskSequencePrefix, mu: State) -> State:
    """Φ^{ν^k} ∘ … ∘ Φ^{ν^0}(μ): la máscara prefix[0] se aplica primero."""
    if not prefix:
        raise UsageError("El prefijo de máscaras no puede estar vacío")
    _same_width(phi.width, mu, *prefix)
    current = mu.bits
    for nu in prefix:
        current = step_bits(phi.outputs, nu.bits, current)
    return State(current, phi.width)


def nullclin(phi: TruthTable, i: int) -> frozenset[State]:
    """NC_i = {μ : Φ_i(μ) = μ_i}."""
    if not 1 <= i <= phi.width:
        raise UsageError(f"Índice de coordenada {i} fuera de 1..{phi.width}")
    bit = 1 << (i - 1)
    return frozenset(State(k, phi.width) for k, out in enumerate(phi.outputs) if (out ^ k) & bit == 0)


def unstable_coordinates(phi: TruthTable, mu: State) -> tuple[int, ...]:
    """Coordenadas excitadas de μ: aquellas i con Φ_i(μ) ≠ μ_i."""
    _same_width(phi.width, mu)
    diff = phi.outputs[mu.bits] ^ mu.bits
    return tuple(i + 1 for i in range(phi.width) if diff >> i & 1)


def is_fixed_point(phi: TruthTable, mu: State) -> bool:
    _same_width(phi.width, mu)
    return phi.outputs[mu.bits] == mu.bits


def fixed_points(phi: TruthTable) -> frozenset[State]:
    return frozenset(State(k, phi.width) for k, out in enumerate(phi.outputs) if out == k)
