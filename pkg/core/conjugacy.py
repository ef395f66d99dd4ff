"""
conjugacy.py – Equivalencia (conjugación) entre sistemas asíncronos

Este módulo:
  - Verifica un testigo (h, h′) con h biyección de B^n y h′ ∈ Ω_n comprobando el
    diagrama h ∘ Φ^ν = Ψ^{h′(ν)} ∘ h para todos los pares (ν, μ).
  - Verifica el mismo testigo sobre corridas discretas y continuas de un corpus.
  - Busca exhaustivamente un testigo (n ≤ 3) con poda por puntos fijos y por la
    actualización total, opcionalmente repartiendo la búsqueda entre hilos.
  - Comprueba la transferencia de invariantes (puntos fijos, periodos, transitividad,
    identidad) y busca perturbaciones admisibles (conjugadas distintas de Φ).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterator, Optional, Sequence

from core.boolean import State, TruthTable, UpdateMask, fixed_points, step_bits
from core.config import get_config
from core.errors import CapabilityError, UsageError
from core.omega import (
    StateBijection,
    compose,
    enumerate_omega,
    invert,
    is_in_omega,
    map_progressive_function,
    map_sequence,
)
from core.runs import (
    ProgressiveFunction,
    continuous_run,
    default_run_corpus,
    detect_period,
    discrete_run,
    run_horizon,
)
from core.state_graph import build_graph, is_transitive_exists, is_transitive_forall
from utils import metrics
from utils.logger import logger

MAX_SEARCH_WIDTH = 3

RunCorpus = Sequence[tuple[State, ProgressiveFunction]]


@dataclass(frozen=True)
class ConjugacyWitness:
    """(h, h′): h biyección de estados, h′ ∈ Ω_n actuando sobre máscaras."""

    h: StateBijection
    h_prime: StateBijection

    def __post_init__(self):
        if self.h.width != self.h_prime.width:
            raise UsageError("h y h′ deben tener la misma anchura")
        membership = is_in_omega(self.h_prime)
        if not membership.verdict:
            raise UsageError(f"h′ no pertenece a Ω_{self.h_prime.width} (condición {membership.failed_condition})")

    @property
    def width(self) -> int:
        return self.h.width


@dataclass(frozen=True)
class EquivalenceVerdict:
    equivalent: bool
    witness: Optional[ConjugacyWitness] = None
    counterexample: Optional[tuple[UpdateMask, State]] = None
    exhausted: bool = False


@dataclass(frozen=True)
class InvarianceReport:
    fixed_points: bool
    periods: bool
    transitivity: bool
    identity: bool
    details: tuple[str, ...] = field(default_factory=tuple)

    @property
    def holds(self) -> bool:
        return self.fixed_points and self.periods and self.transitivity and self.identity


def _same_width(*tables: TruthTable, witness: Optional[ConjugacyWitness] = None) -> int:
    widths = {t.width for t in tables}
    if witness is not None:
        widths.add(witness.width)
    if len(widths) != 1:
        raise UsageError(f"Anchuras incompatibles: {sorted(widths)}")
    return widths.pop()


def _diagram_failure(phi_out: Sequence[int], psi_out: Sequence[int], h: Sequence[int],
                     h_prime: Sequence[int]) -> Optional[tuple[int, int]]:
    size = len(h)
    for nu in range(size):
        image_mask = h_prime[nu]
        for mu in range(size):
            if h[step_bits(phi_out, nu, mu)] != step_bits(psi_out, image_mask, h[mu]):
                return nu, mu
    return None


def check_conjugacy(phi: TruthTable, psi: TruthTable, witness: ConjugacyWitness) -> EquivalenceVerdict:
    """Comprueba el diagrama para todo (ν, μ); devuelve el primer fallo en orden (ν, μ)."""
    width = _same_width(phi, psi, witness=witness)
    failure = _diagram_failure(phi.outputs, psi.outputs, witness.h.forward, witness.h_prime.forward)
    if failure is None:
        return EquivalenceVerdict(True, witness)
    nu, mu = failure
    return EquivalenceVerdict(False, None, (UpdateMask(nu, width), State(mu, width)))


def _default_corpus(width: int) -> list[tuple[State, ProgressiveFunction]]:
    config = get_config()
    return default_run_corpus(width, config.corpus_size, config.corpus_seed)


def check_conjugacy_runs(phi: TruthTable, psi: TruthTable, witness: ConjugacyWitness,
                         corpus: Optional[RunCorpus] = None, k_max: Optional[int] = None) -> bool:
    """
    Verificación por corridas: h(Φ̂^α(k, μ)) = Ψ̂^{ĥ′(α)}(k, h(μ)) para k ≤ k_max y
    h(Φ^ρ(t, μ)) = Ψ^{h′(ρ)}(t, h(μ)) en todos los instantes del corpus.
    """
    width = _same_width(phi, psi, witness=witness)
    k_max = get_config().run_probe_steps if k_max is None else k_max
    corpus = _default_corpus(width) if corpus is None else corpus
    h, h_prime = witness.h, witness.h_prime
    for mu, rho in corpus:
        alpha = rho.masks
        beta = map_sequence(h_prime, alpha)
        for k in range(-1, k_max + 1):
            if h(discrete_run(phi, alpha, mu, k)) != discrete_run(psi, beta, h(mu), k):
                logger.debug(f"Corrida discreta discrepante: μ={mu}, k={k}")
                return False
        x = continuous_run(phi, rho, mu)
        y = continuous_run(psi, map_progressive_function(h_prime, rho), h(mu))
        probes = [rho.time_at(0) - 1] + [rho.time_at(k) for k in range(run_horizon(rho))]
        for t in probes:
            if h(x.value_at(t)) != y.value_at(t):
                logger.debug(f"Corrida continua discrepante: μ={mu}, t={t}")
                return False
    return True


def _search_partition(phi: TruthTable, psi: TruthTable, first: int,
                      omega: tuple[StateBijection, ...]) -> Optional[ConjugacyWitness]:
    """Primer testigo lexicográfico con h(0…0) = first."""
    size = phi.size
    phi_out, psi_out = phi.outputs, psi.outputs
    phi_fixed = [k for k in range(size) if phi_out[k] == k]
    psi_fixed = {k for k in range(size) if psi_out[k] == k}
    rest = [v for v in range(size) if v != first]
    candidates = pruned = 0
    try:
        for tail in permutations(rest):
            forward = (first, *tail)
            candidates += 1
            if any(forward[k] not in psi_fixed for k in phi_fixed):
                pruned += 1
                continue
            if any(forward[phi_out[m]] != psi_out[forward[m]] for m in range(size)):
                pruned += 1
                continue
            for h_prime in omega:
                if _diagram_failure(phi_out, psi_out, forward, h_prime.forward) is None:
                    return ConjugacyWitness(StateBijection(phi.width, forward), h_prime)
        return None
    finally:
        metrics.inc("conjugacy.candidates", candidates)
        metrics.inc("conjugacy.pruned", pruned)


@metrics.measure_performance("conjugacy.find_equivalence")
def find_equivalence(phi: TruthTable, psi: TruthTable, jobs: Optional[int] = None) -> EquivalenceVerdict:
    """
    Búsqueda exhaustiva sobre (h, h′) en orden lexicográfico de tablas (h primero). Con
    jobs > 1 el espacio se reparte por el valor de h(0…0) y se toma el mínimo lexicográfico
    de los testigos de cada partición, por lo que el resultado no depende de `jobs`.
    """
    width = _same_width(phi, psi)
    if width > MAX_SEARCH_WIDTH:
        raise CapabilityError("búsqueda de equivalencia", width, MAX_SEARCH_WIDTH)
    if len(fixed_points(phi)) != len(fixed_points(psi)):
        logger.debug("Equivalencia descartada: distinto número de puntos fijos")
        return EquivalenceVerdict(False, exhausted=True)
    omega = enumerate_omega(width)
    jobs = get_config().jobs if jobs is None else jobs
    partitions = range(phi.size)
    witness: Optional[ConjugacyWitness] = None
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            found = [w for w in pool.map(lambda first: _search_partition(phi, psi, first, omega), partitions) if w]
        if found:
            witness = min(found, key=lambda w: (w.h.forward, w.h_prime.forward))
    else:
        for first in partitions:
            witness = _search_partition(phi, psi, first, omega)
            if witness is not None:
                break
    if witness is None:
        logger.info("No existe testigo de equivalencia (búsqueda agotada)")
        return EquivalenceVerdict(False, exhausted=True)
    logger.info(f"Testigo de equivalencia encontrado: h={witness.h.forward}, h′={witness.h_prime.forward}")
    return EquivalenceVerdict(True, witness, exhausted=True)


def inverse_witness(witness: ConjugacyWitness) -> ConjugacyWitness:
    """Si (h, h′) lleva Φ a Ψ, (h⁻¹, h′⁻¹) lleva Ψ a Φ."""
    return ConjugacyWitness(invert(witness.h), invert(witness.h_prime))


def compose_witnesses(first: ConjugacyWitness, second: ConjugacyWitness) -> ConjugacyWitness:
    """Φ →(first) Ψ →(second) Χ da Φ → Χ con (h2∘h1, h2′∘h1′)."""
    return ConjugacyWitness(compose(second.h, first.h), compose(second.h_prime, first.h_prime))


def conjugate_table(phi: TruthTable, h: StateBijection) -> TruthTable:
    """h ∘ Φ ∘ h⁻¹: la única Ψ compatible con h en la actualización total."""
    outputs = [0] * phi.size
    for mu in range(phi.size):
        outputs[h.forward[mu]] = h.forward[phi.outputs[mu]]
    return TruthTable(phi.width, tuple(outputs))


def enumerate_conjugates(phi: TruthTable) -> Iterator[tuple[TruthTable, ConjugacyWitness]]:
    """Todos los pares (Ψ, (h, h′)) con Ψ equivalente a Φ, en orden lexicográfico de (h, h′)."""
    if phi.width > MAX_SEARCH_WIDTH:
        raise CapabilityError("enumeración de conjugadas", phi.width, MAX_SEARCH_WIDTH)
    omega = enumerate_omega(phi.width)
    for forward in permutations(range(phi.size)):
        h = StateBijection(phi.width, forward)
        psi = conjugate_table(phi, h)
        for h_prime in omega:
            if _diagram_failure(phi.outputs, psi.outputs, forward, h_prime.forward) is None:
                yield psi, ConjugacyWitness(h, h_prime)


def has_nontrivial_conjugate(phi: TruthTable) -> Optional[tuple[TruthTable, ConjugacyWitness]]:
    """Primera Ψ ≠ Φ equivalente a Φ, si existe."""
    for psi, witness in enumerate_conjugates(phi):
        if psi != phi:
            return psi, witness
    return None


def check_invariants_transfer(phi: TruthTable, psi: TruthTable, witness: ConjugacyWitness,
                              corpus: Optional[RunCorpus] = None) -> InvarianceReport:
    """Comprueba que el testigo transporta puntos fijos, periodos, transitividad e identidad."""
    width = _same_width(phi, psi, witness=witness)
    verdict = check_conjugacy(phi, psi, witness)
    if not verdict.equivalent:
        raise UsageError("El testigo no verifica el diagrama de conjugación")
    corpus = _default_corpus(width) if corpus is None else corpus
    h, h_prime = witness.h, witness.h_prime
    details = []

    fixed_ok = {h(mu) for mu in fixed_points(phi)} == set(fixed_points(psi))
    if not fixed_ok:
        details.append("h no transporta los puntos fijos")

    periods_ok = True
    for mu, rho in corpus:
        left = detect_period(continuous_run(phi, rho, mu))
        right = detect_period(continuous_run(psi, map_progressive_function(h_prime, rho), h(mu)))
        if left != right:
            periods_ok = False
            details.append(f"periodo distinto desde μ={mu}: {left} frente a {right}")
            break

    graph_phi, graph_psi = build_graph(phi), build_graph(psi)
    transitivity_ok = (
        is_transitive_exists(phi, graph_phi) == is_transitive_exists(psi, graph_psi)
        and is_transitive_forall(phi, graph_phi) == is_transitive_forall(psi, graph_psi)
    )
    if not transitivity_ok:
        details.append("la transitividad no se conserva")

    identity_ok = phi.is_identity() == psi.is_identity()
    if not identity_ok:
        details.append("solo uno de los sistemas es la identidad")

    return InvarianceReport(fixed_ok, periods_ok, transitivity_ok, identity_ok, tuple(details))
