"""
state_graph.py – Grafo de transiciones, accesibilidad, transitividad y retratos DOT

Este módulo:
  - Construye el grafo dirigido (networkx) con nodos B^n y una arista μ → Φ^ν(μ) por cada
    sucesor, etiquetada con el conjunto de máscaras ν que la producen.
  - Decide accesibilidad y las dos nociones de transitividad:
      * existencial: existe alguna corrida de μ a μ′ (grafo fuertemente conexo);
      * universal: toda corrida progresiva desde μ visita μ′. Falla exactamente cuando,
        en el grafo sin μ′, μ alcanza una componente fuertemente conexa "justa" (la unión
        de las máscaras de sus aristas internas cubre todas las coordenadas).
  - Construye el lazo testigo que evita μ′ cuando la transitividad universal falla.
  - Exporta el retrato de fases en formato DOT.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Optional

import networkx as nx

from core.boolean import State, TruthTable, UpdateMask, step_bits, unstable_coordinates
from core.errors import CapabilityError, UsageError
from core.runs import LassoMaskSequence, ProgressiveFunction, continuous_run
from utils.logger import logger

MAX_GRAPH_WIDTH = 12


@dataclass(frozen=True)
class TransitionGraph:
    """
    Grafo congelado. Cada arista (u, v) lleva `masks` (frozenset de códigos ν con
    Φ^ν(u) = v) y `union` (el OR de esas máscaras). Toda arista de un nodo a sí mismo
    incluye al menos la máscara nula.
    """

    table: TruthTable
    digraph: nx.DiGraph

    @property
    def width(self) -> int:
        return self.table.width

    def successors(self, mu: State) -> dict[State, frozenset[UpdateMask]]:
        return {
            State(v, self.width): frozenset(UpdateMask(nu, self.width) for nu in data["masks"])
            for v, data in self.digraph[mu.bits].items()
        }

    def edges(self) -> Iterator[tuple[State, frozenset[UpdateMask], State]]:
        for u, v, data in sorted(self.digraph.edges(data=True), key=lambda e: (e[0], e[1])):
            yield State(u, self.width), frozenset(UpdateMask(nu, self.width) for nu in data["masks"]), State(v, self.width)


@dataclass(frozen=True)
class OrbitSet:
    source: State
    states: frozenset[State]


def build_graph(phi: TruthTable) -> TransitionGraph:
    if phi.width > MAX_GRAPH_WIDTH:
        raise CapabilityError("grafo de transiciones", phi.width, MAX_GRAPH_WIDTH)
    size = phi.size
    graph = nx.DiGraph()
    graph.add_nodes_from(range(size))
    for mu in range(size):
        grouped: dict[int, set[int]] = defaultdict(set)
        for nu in range(size):
            grouped[step_bits(phi.outputs, nu, mu)].add(nu)
        for succ, masks in grouped.items():
            union = 0
            for nu in masks:
                union |= nu
            graph.add_edge(mu, succ, masks=frozenset(masks), union=union)
    logger.debug(f"Grafo de transiciones: {graph.number_of_nodes()} nodos, {graph.number_of_edges()} aristas")
    return TransitionGraph(phi, nx.freeze(graph))


def _graph_for(phi: TruthTable, graph: Optional[TransitionGraph]) -> TransitionGraph:
    if graph is None:
        return build_graph(phi)
    if graph.table != phi:
        raise UsageError("El grafo proporcionado no corresponde a la tabla")
    return graph


def orbit(phi: TruthTable, rho: ProgressiveFunction, mu: State) -> OrbitSet:
    """Conjunto de valores que toma Φ^ρ(·, μ)."""
    return OrbitSet(mu, continuous_run(phi, rho, mu).states())


def accessible(phi: TruthTable, mu: State, mu_prime: State, graph: Optional[TransitionGraph] = None) -> bool:
    """Existe una corrida de μ que pasa por μ′ (μ es accesible desde sí mismo)."""
    if mu.width != phi.width or mu_prime.width != phi.width:
        raise UsageError("Anchuras incompatibles en la consulta de accesibilidad")
    if mu == mu_prime:
        return True
    g = _graph_for(phi, graph)
    return nx.has_path(g.digraph, mu.bits, mu_prime.bits)


def is_transitive_exists(phi: TruthTable, graph: Optional[TransitionGraph] = None) -> bool:
    return nx.is_strongly_connected(_graph_for(phi, graph).digraph)


def _fair_components(sub: nx.DiGraph, full: int) -> list[frozenset[int]]:
    fair = []
    for component in nx.strongly_connected_components(sub):
        union = 0
        for u in component:
            for v, data in sub[u].items():
                if v in component:
                    union |= data["union"]
        if union == full:
            fair.append(frozenset(component))
    return sorted(fair, key=min)


def _avoidance(g: TransitionGraph, target: int) -> tuple[nx.DiGraph, list[frozenset[int]], set[int]]:
    """Subgrafo sin `target`, sus SCC justas y los nodos desde los que se alcanza alguna."""
    sub = g.digraph.subgraph(v for v in g.digraph if v != target)
    fair = _fair_components(sub, (1 << g.width) - 1)
    doomed: set[int] = set()
    queue: deque[int] = deque()
    for component in fair:
        doomed |= component
        queue.extend(component)
    while queue:
        v = queue.popleft()
        for u in sub.predecessors(v):
            if u not in doomed:
                doomed.add(u)
                queue.append(u)
    return sub, fair, doomed


def _path_masks(sub: nx.DiGraph, path: list[int]) -> list[int]:
    return [min(sub[u][v]["masks"]) for u, v in zip(path, path[1:])]


def _covering_walk(sub: nx.DiGraph, component: frozenset[int], anchor: int, width: int) -> list[int]:
    """Camino cerrado desde `anchor` dentro de la componente cuyas máscaras cubren las n coordenadas."""
    inner = sub.subgraph(component)
    masks: list[int] = []
    covered = 0
    current = anchor
    for i in range(width):
        bit = 1 << i
        if covered & bit:
            continue
        u, v, nu = min(
            (u, v, min(m for m in data["masks"] if m & bit))
            for u, v, data in inner.edges(data=True)
            if data["union"] & bit
        )
        lead = nx.shortest_path(inner, current, u)
        masks.extend(_path_masks(inner, lead))
        masks.append(nu)
        for m in masks:
            covered |= m
        current = v
    masks.extend(_path_masks(inner, nx.shortest_path(inner, current, anchor)))
    return masks


def find_avoiding_run(phi: TruthTable, mu: State, mu_prime: State,
                      graph: Optional[TransitionGraph] = None) -> Optional[LassoMaskSequence]:
    """
    Secuencia progresiva en forma de lazo cuya corrida desde μ nunca visita μ′, o None si
    toda corrida progresiva desde μ visita μ′.
    """
    if mu.width != phi.width or mu_prime.width != phi.width:
        raise UsageError("Anchuras incompatibles en la búsqueda de corrida evitadora")
    if mu == mu_prime:
        return None
    g = _graph_for(phi, graph)
    sub, fair, doomed = _avoidance(g, mu_prime.bits)
    if mu.bits not in doomed:
        return None
    fair_nodes = {v: component for component in fair for v in component}
    parents = {mu.bits: None}
    queue = deque([mu.bits])
    anchor = None
    while queue:
        v = queue.popleft()
        if v in fair_nodes:
            anchor = v
            break
        for w in sorted(sub.successors(v)):
            if w not in parents:
                parents[w] = v
                queue.append(w)
    path = [anchor]
    while parents[path[-1]] is not None:
        path.append(parents[path[-1]])
    path.reverse()
    width = phi.width
    prefix = _path_masks(sub, path)
    cycle = _covering_walk(sub, fair_nodes[anchor], anchor, width)
    return LassoMaskSequence(
        tuple(UpdateMask(nu, width) for nu in prefix), tuple(UpdateMask(nu, width) for nu in cycle)
    )


def forall_counterexample(phi: TruthTable, graph: Optional[TransitionGraph] = None
                          ) -> Optional[tuple[State, State, LassoMaskSequence]]:
    """Primer par (μ, μ′), en orden lexicográfico, con una corrida progresiva desde μ que evita μ′."""
    g = _graph_for(phi, graph)
    doomed_by_target = {target: _avoidance(g, target)[2] for target in range(phi.size)}
    for mu in range(phi.size):
        for target in range(phi.size):
            if mu != target and mu in doomed_by_target[target]:
                source, avoided = State(mu, phi.width), State(target, phi.width)
                lasso = find_avoiding_run(phi, source, avoided, g)
                logger.debug(f"Transitividad universal rota: {source} evita {avoided}")
                return source, avoided, lasso
    return None


def is_transitive_forall(phi: TruthTable, graph: Optional[TransitionGraph] = None) -> bool:
    return forall_counterexample(phi, graph) is None


def all_tables(width: int) -> Iterator[TruthTable]:
    """Las (2^n)^(2^n) tablas de anchura n, en orden lexicográfico de salidas."""
    if width > 2:
        raise CapabilityError("enumeración de tablas", width, 2)
    size = 1 << width
    for outputs in product(range(size), repeat=size):
        yield TruthTable(width, outputs)


def separating_functions(width: int) -> list[TruthTable]:
    """Tablas transitivas en sentido existencial pero no universal."""
    found = []
    for phi in all_tables(width):
        g = build_graph(phi)
        if is_transitive_exists(phi, g) and not is_transitive_forall(phi, g):
            found.append(phi)
    return found


def _gvquote(text: str) -> str:
    return '"{}"'.format(text.replace('"', r'\"'))


def _portrait_label(phi: TruthTable, mu: State) -> str:
    unstable = set(unstable_coordinates(phi, mu))
    return "".join(
        f"[{value}]" if i + 1 in unstable else str(value) for i, value in enumerate(mu.coords())
    )


def _portrait_lines(phi: TruthTable, self_loops: bool) -> Iterator[str]:
    width = phi.width
    yield "digraph portrait {"
    yield "  node [shape=plaintext];"
    for k in range(phi.size):
        mu = State(k, width)
        yield f"  {_gvquote(str(mu))} [label={_gvquote(_portrait_label(phi, mu))}];"
    top = (1 << width) - 1
    for k in range(phi.size):
        mu = State(k, width)
        targets = set()
        for i in unstable_coordinates(phi, mu):
            nu = 1 << (i - 1)
            succ = step_bits(phi.outputs, nu, k)
            targets.add(succ)
            yield (f"  {_gvquote(str(mu))} -> {_gvquote(str(State(succ, width)))}"
                   f" [label={_gvquote(str(UpdateMask(nu, width)))}];")
        full = phi.outputs[k]
        if full != k and full not in targets:
            yield (f"  {_gvquote(str(mu))} -> {_gvquote(str(State(full, width)))}"
                   f" [label={_gvquote(str(UpdateMask(top, width)))}, style=bold];")
        if self_loops and full == k:
            yield f"  {_gvquote(str(mu))} -> {_gvquote(str(mu))} [style=dashed];"
    yield "}"


def export_portrait(phi: TruthTable, self_loops: bool = False) -> str:
    """
    Retrato de fases en DOT: un nodo por estado, con las coordenadas excitadas entre
    corchetes; una arista por cada coordenada excitada y una arista adicional para la
    actualización total cuando su destino no coincide con ninguno de los anteriores.
    """
    if phi.width > MAX_GRAPH_WIDTH:
        raise CapabilityError("retrato de fases", phi.width, MAX_GRAPH_WIDTH)
    return "\n".join(_portrait_lines(phi, self_loops)) + "\n"
