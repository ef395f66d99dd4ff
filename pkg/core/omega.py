"""
omega.py – Biyecciones de B^n y el grupo Ω_n

Este módulo:
  - Representa biyecciones h: B^n → B^n por su tabla directa (y la inversa precalculada).
  - Decide la pertenencia a Ω_n: h fija (0,…,0) y (1,…,1), y para todo conjunto S de
    estados, S cubre todas las coordenadas (su unión es (1,…,1)) si y solo si h(S) también.
  - Enumera Ω_n para n ≤ 3, compone e invierte biyecciones.
  - Transporta secuencias de máscaras y funciones progresivas por h′ ∈ Ω_n.

Para n ≤ 3 la enumeración coincide con las permutaciones de coordenadas (|Ω_2| = 2,
|Ω_3| = 6).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Mapping, Optional, Sequence, TypeVar

from core.boolean import State, bits_to_text
from core.errors import CapabilityError, UsageError
from core.runs import LassoMaskSequence, ProgressiveFunction
from utils.logger import logger

MAX_MEMBERSHIP_WIDTH = 4
MAX_ENUMERATION_WIDTH = 3

S = TypeVar("S", bound=State)


def union_states(mus: Sequence[State]) -> State:
    """μ¹ ∪ … ∪ μ^k coordenada a coordenada."""
    if not mus:
        raise UsageError("La unión necesita al menos un estado")
    width = mus[0].width
    bits = 0
    for mu in mus:
        if mu.width != width:
            raise UsageError(f"Anchuras distintas en la unión: {width} y {mu.width}")
        bits |= mu.bits
    return State(bits, width)


@dataclass(frozen=True, slots=True)
class StateBijection:
    width: int
    forward: tuple[int, ...]
    inverse: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        forward = tuple(self.forward)
        object.__setattr__(self, "forward", forward)
        size = 1 << self.width
        if len(forward) != size:
            raise UsageError(f"La biyección necesita {size} filas, recibidas {len(forward)}")
        if sorted(forward) != list(range(size)):
            repeated = sorted({bits_to_text(v, self.width) for v in forward if forward.count(v) > 1})
            raise UsageError(f"La tabla no es biyectiva (imágenes repetidas: {', '.join(repeated)})")
        inverse = [0] * size
        for k, v in enumerate(forward):
            inverse[v] = k
        object.__setattr__(self, "inverse", tuple(inverse))

    @classmethod
    def identity(cls, width: int) -> "StateBijection":
        return cls(width, tuple(range(1 << width)))

    @classmethod
    def from_mapping(cls, rows: Mapping[State, State]) -> "StateBijection":
        width = next(iter(rows)).width
        forward = [None] * (1 << width)
        for mu, image in rows.items():
            forward[mu.bits] = image.bits
        if None in forward:
            raise UsageError("La biyección no define todas las entradas")
        return cls(width, tuple(forward))

    @classmethod
    def coordinate_permutation(cls, perm: Sequence[int]) -> "StateBijection":
        """h(μ)_j = μ_{perm[j−1]}, con perm una permutación de 1..n."""
        width = len(perm)
        if sorted(perm) != list(range(1, width + 1)):
            raise UsageError(f"{list(perm)} no es una permutación de 1..{width}")
        forward = []
        for k in range(1 << width):
            image = 0
            for j, source in enumerate(perm):
                image |= (k >> (source - 1) & 1) << j
            forward.append(image)
        return cls(width, tuple(forward))

    def __call__(self, x: S) -> S:
        if x.width != self.width:
            raise UsageError(f"Anchura incompatible: biyección {self.width}, argumento {x.width}")
        return type(x)(self.forward[x.bits], self.width)

    def rows(self):
        for k, v in enumerate(self.forward):
            yield State(k, self.width), State(v, self.width)


@dataclass(frozen=True)
class OmegaMembership:
    subject: StateBijection
    verdict: bool
    witness: Optional[tuple[State, ...]] = None
    failed_condition: Optional[str] = None


def _membership(h: StateBijection) -> OmegaMembership:
    size = 1 << h.width
    top = size - 1
    if h.forward[0] != 0 or h.forward[top] != top:
        return OmegaMembership(h, False, None, "extremes")
    count = 1 << size
    union_src = [0] * count
    union_img = [0] * count
    backward = None
    for subset in range(1, count):
        low = subset & -subset
        element = low.bit_length() - 1
        rest = subset ^ low
        union_src[subset] = union_src[rest] | element
        union_img[subset] = union_img[rest] | h.forward[element]
        covers, image_covers = union_src[subset] == top, union_img[subset] == top
        if covers and not image_covers:
            return OmegaMembership(h, False, _subset_states(subset, h.width), "covering")
        if image_covers and not covers and backward is None:
            backward = subset
    if backward is not None:
        return OmegaMembership(h, False, _subset_states(backward, h.width), "covering")
    return OmegaMembership(h, True)


def _subset_states(subset: int, width: int) -> tuple[State, ...]:
    return tuple(State(k, width) for k in range(1 << width) if subset >> k & 1)


@lru_cache(maxsize=4096)
def is_in_omega(h: StateBijection) -> OmegaMembership:
    """
    Pertenencia a Ω_n. Si falla la condición de cobertura, el testigo es el primer
    conjunto S (en orden de codificación) con ∪S = (1,…,1) pero ∪h(S) ≠ (1,…,1); si no
    existe, el primero con la implicación inversa rota.
    """
    if h.width > MAX_MEMBERSHIP_WIDTH:
        raise CapabilityError("pertenencia a Ω_n", h.width, MAX_MEMBERSHIP_WIDTH)
    return _membership(h)


def is_coordinate_permutation(h: StateBijection) -> bool:
    perm = []
    for i in range(h.width):
        image = h.forward[1 << i]
        if image == 0 or image & (image - 1):
            return False
        perm.append(image.bit_length())
    # perm[i] = coordenada destino de la coordenada i+1
    source = [0] * h.width
    for i, target in enumerate(perm):
        source[target - 1] = i + 1
    if sorted(source) != list(range(1, h.width + 1)):
        return False
    return StateBijection.coordinate_permutation(source) == h


def compose(h1: StateBijection, h2: StateBijection) -> StateBijection:
    """h1 ∘ h2 (se aplica h2 primero)."""
    if h1.width != h2.width:
        raise UsageError("No se pueden componer biyecciones de anchuras distintas")
    return StateBijection(h1.width, tuple(h1.forward[v] for v in h2.forward))


def invert(h: StateBijection) -> StateBijection:
    return StateBijection(h.width, h.inverse)


@lru_cache(maxsize=None)
def enumerate_omega(width: int) -> tuple[StateBijection, ...]:
    """Todos los elementos de Ω_n en orden lexicográfico de la tabla directa."""
    if width > MAX_ENUMERATION_WIDTH:
        raise CapabilityError("enumeración de Ω_n", width, MAX_ENUMERATION_WIDTH)
    if width < 1:
        raise UsageError(f"La anchura debe ser al menos 1 (recibido {width})")
    top = (1 << width) - 1
    members = []
    for middle in permutations(range(1, top)):
        h = StateBijection(width, (0, *middle, top))
        if _membership(h).verdict:
            members.append(h)
    logger.debug(f"|Ω_{width}| = {len(members)}")
    return tuple(members)


def _require_omega(h: StateBijection) -> None:
    membership = is_in_omega(h)
    if not membership.verdict:
        raise UsageError(f"La biyección no pertenece a Ω_{h.width} (condición {membership.failed_condition})")


def map_sequence(h: StateBijection, alpha: LassoMaskSequence) -> LassoMaskSequence:
    """ĥ′(α)_k = h′(α_k); el resultado es progresivo cuando α lo es."""
    _require_omega(h)
    mapped = LassoMaskSequence(tuple(h(nu) for nu in alpha.prefix), tuple(h(nu) for nu in alpha.cycle))
    if alpha.is_progressive() and not mapped.is_progressive():
        raise RuntimeError("h′ ∈ Ω_n transformó una secuencia progresiva en una no progresiva")
    return mapped


def map_progressive_function(h: StateBijection, rho: ProgressiveFunction) -> ProgressiveFunction:
    """h′(ρ): mismas marcas de tiempo, máscaras transformadas."""
    return ProgressiveFunction(rho.times, map_sequence(h, rho.masks), rho.period)
