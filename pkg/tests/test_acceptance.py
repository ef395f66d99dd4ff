"""
test_acceptance.py – Comprobaciones exhaustivas sobre anchuras pequeñas

Recorre las 256 tablas de anchura 2 y contrasta el núcleo con los oráculos de fuerza
bruta, las caracterizaciones de puntos fijos, Ω_n y la transferencia de invariantes.
"""

import random
from fractions import Fraction
from functools import reduce

import pytest

from core.boolean import State, fixed_points, nullclin
from core.catalog import gray_cycle, negation, staircase
from core.conjugacy import (
    ConjugacyWitness,
    check_conjugacy,
    check_conjugacy_runs,
    check_invariants_transfer,
    conjugate_table,
    enumerate_conjugates,
)
from core.omega import StateBijection, compose, enumerate_omega, invert, is_coordinate_permutation
from core.oracles import brute_force_accessible, brute_force_transitive_forall
from core.runs import (
    ConstantTail,
    continuous_run,
    diagram_corpus,
    eval_signal,
    final_value,
    progressive_corpus,
    run_corpus,
)
from core.state_graph import (
    accessible,
    all_tables,
    build_graph,
    is_transitive_exists,
    is_transitive_forall,
    orbit,
    separating_functions,
)

WIDTH_TWO = list(all_tables(2))
STATES = [State(mu, 2) for mu in range(4)]
LASSO_CORPUS = progressive_corpus(2, 50, seed=0)


def test_there_are_256_width_two_tables():
    assert len(WIDTH_TWO) == 256
    assert len(set(WIDTH_TWO)) == 256


def test_fixed_point_characterizations_agree():
    for phi in WIDTH_TWO:
        graph = build_graph(phi)
        intersection = reduce(frozenset.intersection, [nullclin(phi, i) for i in (1, 2)])
        for mu in STATES:
            by_table = phi(mu) == mu
            by_graph = set(graph.successors(mu)) == {mu}
            assert by_table == by_graph == (mu in intersection), (phi.outputs, str(mu))


def test_orbits_and_tails_over_lasso_corpus():
    probes = [Fraction(k, 3) for k in range(10)]
    for phi in WIDTH_TWO:
        fixed = fixed_points(phi)
        for mu in STATES:
            for rho in LASSO_CORPUS:
                x = continuous_run(phi, rho, mu)
                assert (orbit(phi, rho, mu).states == {mu}) == (mu in fixed)
                if isinstance(x.tail, ConstantTail):
                    assert final_value(x) in fixed
                for t_hit, state in x.breakpoints:
                    if state in fixed:
                        assert all(eval_signal(x, t_hit + dt) == state for dt in probes)
                        break


def test_accessibility_agrees_with_brute_force():
    for phi in WIDTH_TWO:
        graph = build_graph(phi)
        for mu in STATES:
            for mu_prime in STATES:
                assert accessible(phi, mu, mu_prime, graph) == brute_force_accessible(phi, mu, mu_prime)


def test_forall_transitivity_agrees_with_brute_force():
    for phi in WIDTH_TWO:
        assert is_transitive_forall(phi) == brute_force_transitive_forall(phi), phi.outputs


def test_transitivity_implications():
    for phi in WIDTH_TWO:
        graph = build_graph(phi)
        if is_transitive_forall(phi, graph):
            assert is_transitive_exists(phi, graph)
        if is_transitive_exists(phi, graph):
            assert not fixed_points(phi)


def test_separating_functions():
    found = separating_functions(2)
    assert found
    assert negation(2) in found
    assert gray_cycle() not in found
    for phi in found:
        assert is_transitive_exists(phi) and not is_transitive_forall(phi)


@pytest.mark.parametrize("width, size", [(1, 1), (2, 2), (3, 6)])
def test_omega_is_the_coordinate_permutations(width, size):
    members = enumerate_omega(width)
    assert len(members) == size
    assert all(is_coordinate_permutation(h) for h in members)
    group = set(members)
    assert StateBijection.identity(width) in group
    for a in members:
        assert invert(a) in group
        assert compose(a, invert(a)) == StateBijection.identity(width)
        for b in members:
            assert compose(a, b) in group


def test_randomized_conjugacy_agrees_with_runs():
    rng = random.Random(2024)
    omega = enumerate_omega(2)
    for _ in range(100):
        phi = rng.choice(WIDTH_TWO)
        forward = list(range(4))
        rng.shuffle(forward)
        h = StateBijection(2, tuple(forward))
        psi = conjugate_table(phi, h) if rng.random() < 0.5 else rng.choice(WIDTH_TWO)
        witness = ConjugacyWitness(h, rng.choice(omega))
        assert check_conjugacy(phi, psi, witness).equivalent == check_conjugacy_runs(phi, psi, witness)


@pytest.mark.parametrize("phi", [staircase(), gray_cycle()])
def test_invariants_transfer_with_default_corpus(phi):
    conjugates = list(enumerate_conjugates(phi))
    assert conjugates
    for psi, witness in conjugates:
        assert check_invariants_transfer(phi, psi, witness).holds


def test_invariants_transfer_over_all_width_two_conjugates():
    corpus = run_corpus(2, diagram_corpus(2))
    for phi in WIDTH_TWO:
        seen = set()
        for psi, witness in enumerate_conjugates(phi):
            if psi in seen:
                continue
            seen.add(psi)
            report = check_invariants_transfer(phi, psi, witness, corpus)
            assert report.holds, (phi.outputs, psi.outputs, report.details)
