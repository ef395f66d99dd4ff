"""
oracles.py – Oráculos de fuerza bruta para contrastar los algoritmos de grafo

Cada oráculo recorre explícitamente palabras de máscaras (o tuplas de estados) sin usar
componentes fuertemente conexas. Solo son prácticos para n ≤ 2 (o n ≤ 3 en consultas
sueltas); las pruebas los usan como referencia.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Optional

from core.boolean import State, TruthTable, step_bits
from core.config import get_config
from core.omega import StateBijection


def brute_force_accessible(phi: TruthTable, mu: State, mu_prime: State) -> bool:
    """Busca μ′ aplicando todas las palabras de máscaras de longitud ≤ 2^n."""
    frontier = {mu.bits}
    seen = set(frontier)
    for _ in range(phi.size):
        frontier = {step_bits(phi.outputs, nu, s) for s in frontier for nu in range(phi.size)} - seen
        seen |= frontier
    return mu_prime.bits in seen


def _reachable_avoiding(phi: TruthTable, mu: int, target: int, bound: int) -> set[int]:
    seen = {mu}
    frontier = {mu}
    for _ in range(bound):
        frontier = {
            nxt
            for s in frontier
            for nu in range(phi.size)
            if (nxt := step_bits(phi.outputs, nu, s)) != target
        } - seen
        seen |= frontier
    return seen


def _covering_cycle_exists(phi: TruthTable, start: int, target: int, bound: int) -> bool:
    """¿Existe una palabra de longitud 1..bound que vuelve a `start`, evita `target` y usa todas las coordenadas?"""
    full = phi.size - 1

    @lru_cache(maxsize=None)
    def search(current: int, union: int, remaining: int) -> bool:
        if remaining == 0:
            return False
        for nu in range(phi.size):
            nxt = step_bits(phi.outputs, nu, current)
            if nxt == target:
                continue
            covered = union | nu
            if nxt == start and covered == full:
                return True
            if search(nxt, covered, remaining - 1):
                return True
        return False

    return search(start, 0, bound)


def brute_force_transitive_forall(phi: TruthTable, prefix_bound: Optional[int] = None,
                                  cycle_bound: Optional[int] = None) -> bool:
    """
    Enumera lazos (prefijo ≤ prefix_bound, ciclo ≤ cycle_bound) y busca uno progresivo que
    evite algún μ′ ≠ μ. Cualquier lazo se reduce a un prefijo hasta un estado s y a un
    ciclo cerrado en s.
    """
    config = get_config()
    prefix_bound = config.oracle_prefix_bound if prefix_bound is None else prefix_bound
    cycle_bound = config.oracle_cycle_bound if cycle_bound is None else cycle_bound
    for target in range(phi.size):
        for mu in range(phi.size):
            if mu == target:
                continue
            for s in _reachable_avoiding(phi, mu, target, prefix_bound):
                if _covering_cycle_exists(phi, s, target, cycle_bound):
                    return False
    return True


def omega_condition_by_tuples(h: StateBijection, max_k: int = 4) -> bool:
    """Condición de cobertura comprobada sobre tuplas (μ^1, …, μ^k) con 2 ≤ k ≤ max_k."""
    size = 1 << h.width
    top = size - 1
    for k in range(2, max_k + 1):
        for combo in product(range(size), repeat=k):
            union = image = 0
            for mu in combo:
                union |= mu
                image |= h.forward[mu]
            if (union == top) != (image == top):
                return False
    return True
