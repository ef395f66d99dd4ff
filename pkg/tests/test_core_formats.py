"""
test_core_formats.py – Pruebas para core/formats.py

Cobertura:
  1. Lectura y escritura de tablas, biyecciones, testigos, funciones progresivas y familias.
  2. Diagnósticos con código, línea y columna para cada error de formato.
  3. Traza de señales en texto.
"""

from fractions import Fraction

import pytest

from core.boolean import State
from core.catalog import feedback_not, staircase, xor_shift_witness
from core.errors import CapabilityError, ParseError, UsageError
from core.formats import (
    parse_bijection,
    parse_family,
    parse_progressive_function,
    parse_state,
    parse_truth_table,
    parse_witness,
    render_family,
    render_progressive_function,
    render_signal,
    render_truth_table,
    render_witness,
)
from core.catalog import identity_negation_family
from core.runs import continuous_run, full_update_rho
from core.state_graph import all_tables

STAIRCASE_TEXT = """# escalera
n=2
00 -> 00
10 -> 11
01 -> 10
11 -> 11
"""


def parse_error(fn, text):
    with pytest.raises(ParseError) as info:
        fn(text, source="entrada.txt")
    return info.value


def test_parse_staircase():
    assert parse_truth_table(STAIRCASE_TEXT) == staircase()


def test_render_is_inverse_of_parse_for_all_width_two_tables():
    for phi in all_tables(2):
        assert parse_truth_table(render_truth_table(phi)) == phi


def test_missing_input_diagnostic():
    text = "n=2\n00 -> 00\n10 -> 11\n01 -> 10\n"
    error = parse_error(parse_truth_table, text)
    assert error.code == "missing-input"
    assert "11" in error.message
    assert error.render().startswith("entrada.txt:4: missing-input")


def test_duplicate_and_width_diagnostics():
    error = parse_error(parse_truth_table, "n=1\n0 -> 1\n0 -> 0\n")
    assert (error.code, error.line, error.column) == ("duplicate-input", 3, 1)
    error = parse_error(parse_truth_table, "n=2\n00 -> 0\n")
    assert (error.code, error.line, error.column) == ("width-mismatch", 2, 7)
    error = parse_error(parse_truth_table, "n=1\n0 => 1\n")
    assert error.code == "syntax"
    error = parse_error(parse_truth_table, "# solo comentarios\n")
    assert error.code == "header"


def test_bijection_diagnostics():
    error = parse_error(parse_bijection, "n=1\n0 -> 1\n1 -> 1\n")
    assert (error.code, error.line) == ("not-bijective", 3)
    h = parse_bijection("n=2\n00 -> 00\n10 -> 01\n01 -> 10\n11 -> 11\n")
    assert h.forward == (0, 2, 1, 3)


def test_witness_round_trip():
    witness = xor_shift_witness()
    assert parse_witness(render_witness(witness)) == witness
    error = parse_error(parse_witness, "n=1\n0 -> 0\n1 -> 1\n")
    assert error.code == "syntax"


def test_witness_with_bad_h_prime():
    text = "n=1\n0 -> 0\n1 -> 1\n---\nn=1\n0 -> 1\n1 -> 0\n"
    with pytest.raises(UsageError):
        parse_witness(text)


def test_progressive_function_parse_and_render():
    text = "times: -1, 0, 1/2\nprefix: 11\ncycle: 10, 01\nperiod: 1\n"
    rho = parse_progressive_function(text)
    assert rho.times == (Fraction(-1), Fraction(0), Fraction(1, 2))
    assert [str(nu) for nu in rho.masks.cycle] == ["10", "01"]
    assert parse_progressive_function(render_progressive_function(rho)) == rho


def test_progressive_function_diagnostics():
    error = parse_error(parse_progressive_function, "times: 0\nprefix:\ncycle: 00\nperiod: 1\n")
    assert (error.code, error.line) == ("cycle-not-progressive", 3)
    error = parse_error(parse_progressive_function, "times: 0\nprefix:\ncycle:\nperiod: 1\n")
    assert error.code == "empty-cycle"
    error = parse_error(parse_progressive_function, "times: 0, 1\nprefix:\ncycle: 11\nperiod: 1\n")
    assert error.code == "time-count"
    error = parse_error(parse_progressive_function, "times: 1, 0\nprefix: 11\ncycle: 11\nperiod: 1\n")
    assert error.code == "non-increasing-times"
    error = parse_error(parse_progressive_function, "times: 0, 1\nprefix:\ncycle: 10, 01\nperiod: 1\n")
    assert error.code == "bad-period"
    error = parse_error(parse_progressive_function, "times: 0\nprefix:\ncycle: 11\n")
    assert error.code == "syntax"


def test_family_parse_and_render():
    family = identity_negation_family()
    assert parse_family(render_family(family)) == family


def test_family_diagnostics():
    error = parse_error(parse_family, "n=1 m=1\nlambda=0\n0 -> 0\n1 -> 1\n")
    assert error.code == "missing-lambda"
    text = "n=1 m=1\nlambda=0\n0 -> 0\n1 -> 1\nlambda=0\n0 -> 1\n1 -> 0\n"
    error = parse_error(parse_family, text)
    assert (error.code, error.line) == ("duplicate-lambda", 5)
    error = parse_error(parse_family, "n=1\n")
    assert error.code == "header"


@pytest.mark.parametrize("width", [17, 64])
def test_oversized_header_is_rejected_before_reading_rows(width):
    with pytest.raises(CapabilityError) as info:
        parse_truth_table(f"n={width}\n0 -> 0\n")
    assert (info.value.width, info.value.limit) == (width, 16)
    with pytest.raises(CapabilityError):
        parse_bijection(f"n={width}\n")
    with pytest.raises(CapabilityError):
        parse_family(f"n={width} m=1\nlambda=0\n")


def test_family_parameter_width_cap():
    with pytest.raises(CapabilityError) as info:
        parse_family("n=1 m=40\n")
    assert info.value.width == 40


def test_parse_state():
    assert parse_state("01", 2) == State.parse("01")
    with pytest.raises(ParseError):
        parse_state("01", 3)
    with pytest.raises(ParseError):
        parse_state("0a")


def test_render_signal_constant_tail():
    x = continuous_run(staircase(), full_update_rho(2), State.parse("01"))
    assert render_signal(x) == ["(-inf, 0): 01", "[0, 1): 10", "[1, inf): 11"]


def test_render_signal_periodic_tail():
    x = continuous_run(feedback_not(), full_update_rho(1), State.parse("0"))
    assert render_signal(x) == ["(-inf, 0): 0", "cola periódica desde 0, periodo 2: +0: 1, +1: 0"]
