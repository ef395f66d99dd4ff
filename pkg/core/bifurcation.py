"""
bifurcation.py – Familias paramétricas, estabilidad estructural y diagramas de bifurcación

Este módulo:
  - Modela familias Φ: B^m × B^n → B^n como una tabla por cada valor del parámetro λ.
  - Decide la estabilidad estructural (todos los miembros equivalentes entre sí).
  - Construye el diagrama de bifurcación como partición de B^m en clases de
    equivalencia (búsqueda por pares y componentes conexas), con testigos dentro de cada clase.
  - Construye el diagrama de puntos fijos y señala cuando no aporta información.
  - Decide la equivalencia entre familias mediante una biyección h″ de B^m.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Optional, Sequence

import networkx as nx

from core.boolean import State, TruthTable, fixed_points
from core.config import get_config
from core.conjugacy import ConjugacyWitness, EquivalenceVerdict, find_equivalence
from core.errors import CapabilityError, UsageError
from core.omega import StateBijection
from core.state_graph import build_graph, export_portrait, is_transitive_exists, is_transitive_forall
from utils.logger import logger

MAX_PARAM_WIDTH = 3

UNINFORMATIVE_NOTE = (
    "Ningún miembro de la familia tiene puntos fijos: el diagrama de puntos fijos no "
    "distingue los valores del parámetro."
)


@dataclass(frozen=True)
class ParamFamily:
    """`tables[k]` es Φ(λ, ·) para el parámetro λ de codificación k."""

    state_width: int
    param_width: int
    tables: tuple[TruthTable, ...]

    def __post_init__(self):
        object.__setattr__(self, "tables", tuple(self.tables))
        if self.param_width < 1:
            raise UsageError("La familia necesita al menos un bit de parámetro")
        if self.param_width > MAX_PARAM_WIDTH:
            raise CapabilityError("familia paramétrica", self.param_width, MAX_PARAM_WIDTH)
        if len(self.tables) != 1 << self.param_width:
            raise UsageError(f"Se esperaban {1 << self.param_width} miembros, recibidos {len(self.tables)}")
        if any(table.width != self.state_width for table in self.tables):
            raise UsageError("Todos los miembros deben tener la anchura de estado declarada")

    def parameters(self) -> list[State]:
        return [State(k, self.param_width) for k in range(1 << self.param_width)]

    def member(self, lam: State) -> TruthTable:
        if lam.width != self.param_width:
            raise UsageError(f"Parámetro de anchura {lam.width}, se esperaba {self.param_width}")
        return self.tables[lam.bits]


@dataclass(frozen=True)
class Separation:
    """
    Par de clases distintas y el primer criterio que separa sus representantes:
    "fixed-point-count", "transitivity" o "search-exhausted" (ningún invariante difiere y la
    búsqueda de testigos se agotó).
    """

    classes: tuple[int, int]
    certificate: str


@dataclass(frozen=True)
class BifurcationDiagram:
    family: ParamFamily
    classes: tuple[tuple[State, ...], ...]
    portraits: dict[State, str]
    witnesses: dict[tuple[State, State], ConjugacyWitness]
    separations: tuple[Separation, ...]

    @property
    def representatives(self) -> tuple[State, ...]:
        return tuple(members[0] for members in self.classes)

    @property
    def has_bifurcation(self) -> bool:
        return len(self.classes) > 1

    def class_of(self, lam: State) -> int:
        for index, members in enumerate(self.classes):
            if lam in members:
                return index
        raise UsageError(f"Parámetro {lam} fuera de la familia")


@dataclass(frozen=True)
class FixedPointDiagram:
    points: dict[State, frozenset[State]]
    has_bifurcation: Optional[bool] = None

    @property
    def uninformative(self) -> bool:
        return not any(self.points.values())

    @property
    def note(self) -> Optional[str]:
        if not self.uninformative:
            return None
        if self.has_bifurcation:
            return UNINFORMATIVE_NOTE + " La familia sí presenta bifurcaciones."
        return UNINFORMATIVE_NOTE


def _pair_verdicts(tables: Sequence[TruthTable], pairs: Sequence[tuple[int, int]],
                   jobs: int) -> dict[tuple[int, int], EquivalenceVerdict]:
    def check(pair: tuple[int, int]) -> EquivalenceVerdict:
        i, j = pair
        return find_equivalence(tables[i], tables[j], jobs=1)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return dict(zip(pairs, pool.map(check, pairs)))
    return {pair: check(pair) for pair in pairs}


def _separation_certificate(left: TruthTable, right: TruthTable) -> str:
    if len(fixed_points(left)) != len(fixed_points(right)):
        return "fixed-point-count"
    graph_left, graph_right = build_graph(left), build_graph(right)
    if (is_transitive_exists(left, graph_left) != is_transitive_exists(right, graph_right)
            or is_transitive_forall(left, graph_left) != is_transitive_forall(right, graph_right)):
        return "transitivity"
    return "search-exhausted"


def family_structurally_stable(family: ParamFamily, jobs: Optional[int] = None) -> bool:
    """Todos los miembros son equivalentes al de λ = (0,…,0) (y por tanto entre sí)."""
    jobs = get_config().jobs if jobs is None else jobs
    pairs = [(0, k) for k in range(1, len(family.tables))]
    return all(v.equivalent for v in _pair_verdicts(family.tables, pairs, jobs).values())


def bifurcation_diagram(family: ParamFamily, jobs: Optional[int] = None) -> BifurcationDiagram:
    """
    Partición de B^m en clases de equivalencia de sistemas. Cada par dentro de una clase
    lleva su propio testigo; cada par de clases distintas lleva el primer criterio que las
    separa (la búsqueda exhaustiva entre sus miembros no encontró testigo).
    """
    jobs = get_config().jobs if jobs is None else jobs
    params = family.parameters()
    pairs = list(combinations(range(len(params)), 2))
    verdicts = _pair_verdicts(family.tables, pairs, jobs)

    equivalences = nx.Graph()
    equivalences.add_nodes_from(range(len(params)))
    equivalences.add_edges_from(pair for pair, verdict in verdicts.items() if verdict.equivalent)
    components = sorted(sorted(component) for component in nx.connected_components(equivalences))
    classes = tuple(tuple(params[k] for k in component) for component in components)

    portraits = {members[0]: export_portrait(family.member(members[0])) for members in classes}
    witnesses = {
        (params[i], params[j]): verdict.witness for (i, j), verdict in verdicts.items() if verdict.equivalent
    }
    separations = tuple(
        Separation((a, b), _separation_certificate(family.member(classes[a][0]), family.member(classes[b][0])))
        for a, b in combinations(range(len(classes)), 2)
    )
    logger.info(f"Diagrama de bifurcación: {len(classes)} clase(s) para {len(params)} parámetros")
    return BifurcationDiagram(family, classes, portraits, witnesses, separations)


def fixed_point_diagram(family: ParamFamily, jobs: Optional[int] = None) -> FixedPointDiagram:
    points = {lam: fixed_points(family.member(lam)) for lam in family.parameters()}
    has_bifurcation = None
    if not any(points.values()):
        has_bifurcation = not family_structurally_stable(family, jobs)
    return FixedPointDiagram(points, has_bifurcation)


def families_equivalent(f: ParamFamily, g: ParamFamily, jobs: Optional[int] = None) -> Optional[StateBijection]:
    """
    Primera biyección h″ de B^m (orden lexicográfico) tal que f(λ) y g(h″(λ)) son
    equivalentes para todo λ, o None.
    """
    if f.param_width != g.param_width or f.state_width != g.state_width:
        raise UsageError("Las familias deben compartir anchuras de estado y de parámetro")
    diagram_f = bifurcation_diagram(f, jobs)
    diagram_g = bifurcation_diagram(g, jobs)
    if sorted(map(len, diagram_f.classes)) != sorted(map(len, diagram_g.classes)):
        logger.debug("Familias no equivalentes: estructuras de clases distintas")
        return None

    class_f = [diagram_f.class_of(lam) for lam in f.parameters()]
    class_g = [diagram_g.class_of(lam) for lam in g.parameters()]
    across: dict[tuple[int, int], bool] = {}

    def related(a: int, b: int) -> bool:
        if (a, b) not in across:
            left = f.member(diagram_f.representatives[a])
            right = g.member(diagram_g.representatives[b])
            across[(a, b)] = find_equivalence(left, right, jobs=1).equivalent
        return across[(a, b)]

    for forward in permutations(range(len(class_f))):
        if all(related(class_f[k], class_g[forward[k]]) for k in range(len(class_f))):
            return StateBijection(f.param_width, forward)
    return None
