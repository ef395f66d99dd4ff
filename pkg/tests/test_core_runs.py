"""
test_core_runs.py – Pruebas para core/runs.py

Cobertura:
  1. Secuencias de máscaras en lazo y funciones progresivas (validación, instantes, sufijos).
  2. Corridas discretas y continuas; colas constantes y periódicas.
  3. Periodo mínimo, valor final y sobreyección canónica.
  4. Coincidencia entre corridas discretas y continuas sobre el corpus.
"""

from fractions import Fraction

import pytest

from core.boolean import State, UpdateMask
from core.catalog import feedback_not, gray_cycle, negation, staircase
from core.errors import UsageError
from core.runs import (
    ConstantTail,
    LassoMaskSequence,
    PeriodicTail,
    ProgressiveFunction,
    Signal,
    as_time,
    canonical_surjection,
    continuous_run,
    default_run_corpus,
    detect_period,
    discrete_run,
    final_value,
    full_update_rho,
    nonzero_step_values,
    progressive_corpus,
    runs_agree,
    shifted_run_identity,
    step_values,
)


def masks(*texts):
    return tuple(UpdateMask.parse(t) for t in texts)


def test_as_time_rejects_float():
    assert as_time("1/2") == Fraction(1, 2)
    assert as_time(3) == Fraction(3)
    with pytest.raises(UsageError):
        as_time(0.5)
    with pytest.raises(UsageError):
        as_time("medio")


def test_lasso_sequence():
    alpha = LassoMaskSequence(masks("11"), masks("10", "01"))
    assert alpha.is_progressive()
    assert [str(nu) for nu in alpha.head(5)] == ["11", "10", "01", "10", "01"]
    assert not LassoMaskSequence((), masks("10")).is_progressive()
    with pytest.raises(UsageError):
        LassoMaskSequence(masks("11"), ())


def test_progressive_function_validation():
    alpha = LassoMaskSequence((), masks("11"))
    with pytest.raises(UsageError):
        ProgressiveFunction((0, 1), alpha, 1)
    with pytest.raises(UsageError):
        ProgressiveFunction((0,), LassoMaskSequence((), masks("10")), 1)
    with pytest.raises(UsageError):
        ProgressiveFunction((1, 0), LassoMaskSequence(masks("11"), masks("11")), 1)
    with pytest.raises(UsageError):
        ProgressiveFunction((0, 1), LassoMaskSequence((), masks("10", "01")), 1)


def test_time_at_and_first_index_after():
    rho = ProgressiveFunction((-1, 0, Fraction(1, 2)), LassoMaskSequence(masks("11"), masks("10", "01")), 1)
    assert [rho.time_at(k) for k in range(5)] == [-1, 0, Fraction(1, 2), 1, Fraction(3, 2)]
    assert rho.first_index_after(-2) == 0
    assert rho.first_index_after(0) == 2
    assert rho.first_index_after(Fraction(7, 4)) == 5


def test_suffix_after_rotates_cycle():
    rho = ProgressiveFunction((-1, 0, Fraction(1, 2)), LassoMaskSequence(masks("11"), masks("10", "01")), 1)
    suffix = rho.suffix_after(Fraction(1, 4))
    assert suffix.times == (Fraction(1, 2), Fraction(1))
    assert [str(nu) for nu in suffix.masks.cycle] == ["01", "10"]
    assert suffix.masks.prefix == ()
    assert suffix.period == 1
    kept = rho.suffix_after(-2)
    assert kept == rho


def test_discrete_run():
    alpha = LassoMaskSequence((), masks("11"))
    mu = State.parse("01")
    assert discrete_run(staircase(), alpha, mu, -1) == mu
    assert str(discrete_run(staircase(), alpha, mu, 0)) == "10"
    assert str(discrete_run(staircase(), alpha, mu, 5)) == "11"
    with pytest.raises(UsageError):
        discrete_run(staircase(), alpha, mu, -2)


def test_staircase_continuous_run_settles():
    x = continuous_run(staircase(), full_update_rho(2), State.parse("01"))
    assert [(t, str(s)) for t, s in x.breakpoints] == [(0, "10"), (1, "11")]
    assert isinstance(x.tail, ConstantTail)
    assert str(final_value(x)) == "11"
    assert detect_period(x) is None
    assert str(x.value_at(-1)) == "01"
    assert str(x.value_at(Fraction(1, 2))) == "10"
    assert str(x.value_at(100)) == "11"


def test_feedback_not_is_periodic():
    x = continuous_run(feedback_not(), full_update_rho(1), State.parse("0"))
    assert isinstance(x.tail, PeriodicTail)
    assert x.tail.start == 0
    assert [(off, str(s)) for off, s in x.tail.pattern] == [(0, "1"), (1, "0")]
    assert x.tail.period == 2
    assert final_value(x) is None
    assert detect_period(x) == (Fraction(2), Fraction(0))
    assert str(x.value_at(7)) == "0"
    assert str(x.value_at(Fraction(9, 2))) == "1"


def test_gray_cycle_period():
    x = continuous_run(gray_cycle(), full_update_rho(2), State.parse("00"))
    period, _ = detect_period(x)
    assert period == 4
    assert x.states() == frozenset(State(k, 2) for k in range(4))


def test_signal_map_states():
    x = continuous_run(feedback_not(), full_update_rho(1), State.parse("0"))
    flipped = x.map_states(lambda s: State(1 - s.bits, 1))
    assert str(flipped.initial) == "1"
    assert all(flipped.value_at(t) != x.value_at(t) for t in (-1, 0, 1, Fraction(5, 2)))


def test_signal_constant():
    mu = State.parse("10")
    assert Signal.constant(mu).value_at(42) == mu


def test_canonical_surjection_drops_zero_masks():
    rho = ProgressiveFunction((0, 1, 2), LassoMaskSequence(masks("00"), masks("11", "00")), 2)
    alpha = canonical_surjection(rho)
    assert alpha.prefix == ()
    assert [str(nu) for nu in alpha.cycle] == ["11"]


def test_step_values_skip_zero_masks():
    rho = ProgressiveFunction((0, 1, 2), LassoMaskSequence(masks("00"), masks("11", "00")), 2)
    x = continuous_run(staircase(), rho, State.parse("01"))
    assert [str(s) for s in step_values(x, rho, 3)] == ["01", "10", "10"]
    assert [str(s) for s in nonzero_step_values(x, rho, 2)] == ["10", "11"]


def test_runs_agree_on_corpus():
    for phi in (staircase(), negation(2), gray_cycle()):
        for mu, rho in default_run_corpus(2, size=10, seed=3):
            assert runs_agree(phi, rho, mu)


def test_shifted_run_identity():
    rho = progressive_corpus(2, 1, seed=5)[0]
    probes = [rho.time_at(k) for k in range(12)]
    for k in range(4):
        assert shifted_run_identity(gray_cycle(), rho, State.parse("10"), rho.time_at(k), probes)


def test_progressive_corpus_is_deterministic():
    assert progressive_corpus(2, 5, seed=7) == progressive_corpus(2, 5, seed=7)
    assert all(rho.masks.is_progressive() for rho in progressive_corpus(3, 10, seed=1))


def test_doubled_cycle_reports_minimal_period():
    rho = ProgressiveFunction((0, 1, 2, 3), LassoMaskSequence((), masks("1", "1", "1", "1")), 4)
    x = continuous_run(feedback_not(), rho, State.parse("0"))
    assert isinstance(x.tail, PeriodicTail)
    assert x.tail.period == 4
    assert detect_period(x) == (Fraction(2), Fraction(0))


def test_zero_masks_do_not_change_nonzero_steps():
    plain = ProgressiveFunction.from_masks(LassoMaskSequence(masks("10"), masks("01", "11")))
    padded = ProgressiveFunction(
        (0, Fraction(1, 3), Fraction(1, 2), 1, Fraction(3, 2), Fraction(7, 4)),
        LassoMaskSequence(masks("00", "10", "00"), masks("01", "00", "11")),
        2,
    )
    assert canonical_surjection(plain) == canonical_surjection(padded)
    assert plain.times != padded.times
    for phi in (staircase(), gray_cycle(), negation(2)):
        for bits in range(4):
            mu = State(bits, 2)
            x = continuous_run(phi, plain, mu)
            y = continuous_run(phi, padded, mu)
            assert nonzero_step_values(x, plain, 12) == nonzero_step_values(y, padded, 12)
