"""
test_core_omega.py – Pruebas para core/omega.py

Cobertura:
  1. Biyecciones: construcción, inversa, composición, permutaciones de coordenadas.
  2. Pertenencia a Ω_n con testigo del fallo.
  3. Enumeración de Ω_2 y Ω_3.
  4. Transporte de secuencias de máscaras y funciones progresivas.
"""

import pytest

from core.boolean import State, UpdateMask
from core.errors import CapabilityError, UsageError
from core.omega import (
    StateBijection,
    compose,
    enumerate_omega,
    invert,
    is_coordinate_permutation,
    is_in_omega,
    map_progressive_function,
    map_sequence,
    union_states,
)
from core.oracles import omega_condition_by_tuples
from core.runs import LassoMaskSequence, ProgressiveFunction


def test_bijection_rejects_repeated_images():
    with pytest.raises(UsageError):
        StateBijection(2, (0, 0, 1, 3))
    with pytest.raises(UsageError):
        StateBijection(2, (0, 1, 2))


def test_coordinate_permutation_semantics():
    swap = StateBijection.coordinate_permutation((2, 1))
    assert swap.forward == (0, 2, 1, 3)
    assert str(swap(State.parse("10"))) == "01"
    assert isinstance(swap(UpdateMask.parse("10")), UpdateMask)
    with pytest.raises(UsageError):
        StateBijection.coordinate_permutation((1, 1))


def test_inverse_and_compose():
    h = StateBijection(2, (3, 1, 2, 0))
    assert compose(h, invert(h)) == StateBijection.identity(2)
    cycle = StateBijection.coordinate_permutation((2, 3, 1))
    assert compose(cycle, compose(cycle, cycle)) == StateBijection.identity(3)


def test_membership_identity_and_swap():
    assert is_in_omega(StateBijection.identity(2)).verdict
    assert is_in_omega(StateBijection.coordinate_permutation((2, 1))).verdict


def test_membership_extremes():
    result = is_in_omega(StateBijection(2, (3, 1, 2, 0)))
    assert not result.verdict
    assert result.failed_condition == "extremes"


def test_membership_transposition_witness():
    # Intercambia 001 y 011
    forward = list(range(8))
    forward[4], forward[6] = 6, 4
    result = is_in_omega(StateBijection(3, tuple(forward)))
    assert not result.verdict
    assert result.failed_condition == "covering"
    assert [str(s) for s in result.witness] == ["100", "011"]


def test_membership_capability():
    with pytest.raises(CapabilityError):
        is_in_omega(StateBijection.identity(5))


def test_enumeration_sizes_and_coordinate_permutations():
    omega2 = enumerate_omega(2)
    omega3 = enumerate_omega(3)
    assert len(omega2) == 2
    assert len(omega3) == 6
    assert all(is_coordinate_permutation(h) for h in omega3)
    assert [h.forward for h in omega3] == sorted(h.forward for h in omega3)
    with pytest.raises(CapabilityError):
        enumerate_omega(4)


def test_membership_agrees_with_tuple_oracle():
    for h in enumerate_omega(3):
        assert omega_condition_by_tuples(h, max_k=3)
    forward = list(range(8))
    forward[4], forward[6] = 6, 4
    assert not omega_condition_by_tuples(StateBijection(3, tuple(forward)), max_k=2)


def test_closed_under_compose_and_invert():
    omega = set(enumerate_omega(3))
    for a in omega:
        assert invert(a) in omega
        for b in omega:
            assert compose(a, b) in omega


def test_map_sequence_preserves_progressiveness():
    swap = StateBijection.coordinate_permutation((2, 1))
    alpha = LassoMaskSequence((UpdateMask.parse("00"),), (UpdateMask.parse("10"), UpdateMask.parse("01")))
    mapped = map_sequence(swap, alpha)
    assert [str(nu) for nu in mapped.cycle] == ["01", "10"]
    assert mapped.prefix[0].is_zero()
    assert mapped.is_progressive()
    with pytest.raises(UsageError):
        map_sequence(StateBijection(2, (3, 1, 2, 0)), alpha)


def test_map_progressive_function_keeps_times():
    swap = StateBijection.coordinate_permutation((2, 1))
    rho = ProgressiveFunction((0, 1), LassoMaskSequence((), (UpdateMask.parse("10"), UpdateMask.parse("01"))), 2)
    mapped = map_progressive_function(swap, rho)
    assert mapped.times == rho.times
    assert mapped.period == rho.period


def test_union_states():
    assert union_states([State.parse("01"), State.parse("10")]) == State.parse("11")
    assert union_states([State.parse("010")]) == State.parse("010")
    assert union_states([State.parse("001"), State.parse("010"), State.parse("001")]) == State.parse("011")
    with pytest.raises(UsageError):
        union_states([State.parse("01"), State.parse("011")])
    with pytest.raises(UsageError):
        union_states([])


def test_membership_witness_breaks_covering():
    h = StateBijection.from_mapping({
        State.parse(a): State.parse(b)
        for a, b in [("000", "000"), ("100", "100"), ("010", "010"), ("110", "110"),
                     ("001", "011"), ("101", "101"), ("011", "001"), ("111", "111")]
    })
    membership = is_in_omega(h)
    witness = list(membership.witness)
    covers = union_states(witness).is_top()
    image_covers = union_states([h(mu) for mu in witness]).is_top()
    assert covers != image_covers
