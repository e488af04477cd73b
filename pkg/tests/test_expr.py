"""Grammar round trips, the ramp builder, and error positions."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from acp.expr import ExpressionError, ealpha, format_function, parse
from acp.funcspace import PiecewiseFunction, PowLogTerm, TermSum


def test_single_power_literal():
    f = parse("t^-0.25")
    assert len(f.pieces) == 1
    (term,) = f.pieces[0].terms
    assert term == PowLogTerm(1.0, -0.25, 0.0)


def test_ealpha_builder_pieces():
    f = parse("ealpha(0.25)")
    assert f.breakpoints == (0.0, 0.25, 1.0)
    assert f.pieces[0].terms == (PowLogTerm(4.0, 1.0, 0.0),)
    assert f.pieces[1].terms == (PowLogTerm(1.0, 0.0, 0.0),)
    assert parse("ealpha(1.0)") == PiecewiseFunction.identity()


def test_sum_sorted_dominant_first():
    f = parse("2*t + t^-0.25*L^-0.5")
    terms = f.pieces[0].terms
    assert terms[0].a == -0.25 and terms[0].b == -0.5
    assert terms[1] == PowLogTerm(2.0, 1.0, 0.0)


def test_merge_and_cancellation():
    f = parse("2*t^-0.5 - 2*t^-0.5 + t")
    assert f.pieces[0].terms == (PowLogTerm(1.0, 1.0, 0.0),)
    assert parse("t - t") == parse("0")


def test_piecewise_parsing_and_values():
    f = parse("piece[0,0.5]: t^2; [0.5,1]: t - 0.25")
    assert f.breakpoints == (0.0, 0.5, 1.0)
    assert f.evaluate(0.5) == 0.25
    assert f.evaluate(0.75) == 0.5


@pytest.mark.parametrize(
    "bad, position_le",
    [
        ("", 0),
        ("t^", 2),
        ("piece[0.1,1]: t", 15),
        ("piece[0,0.5]: t; [0.6,1]: t", 27),
        ("piece[0,0.5]: t", 15),
        ("ealpha(2)", 9),
        ("1e999", 5),
        ("t + + t", 7),
        ("t $ t", 5),
    ],
)
def test_errors_carry_positions(bad, position_le):
    with pytest.raises(ExpressionError) as exc:
        parse(bad)
    assert 0 <= exc.value.position <= position_le


def test_breakpoints_out_of_order():
    with pytest.raises(ExpressionError, match="out of order|contiguous|end at 1"):
        parse("piece[0,0.75]: t; [0.75,0.5]: 1")


_coeffs = st.floats(-5, 5).filter(lambda c: abs(c) > 1e-6)
_exps = st.floats(-3, 3)


@st.composite
def _functions(draw):
    nterms = draw(st.integers(1, 4))
    terms = tuple(
        PowLogTerm(draw(_coeffs), draw(_exps), draw(_exps)) for _ in range(nterms)
    )
    if draw(st.booleans()):
        return PiecewiseFunction.from_termsum(TermSum(terms))
    cut = draw(st.floats(0.1, 0.9))
    other = tuple(PowLogTerm(draw(_coeffs), draw(_exps), draw(_exps)) for _ in range(2))
    return PiecewiseFunction((0.0, cut, 1.0), (TermSum(terms), TermSum(other)))


@given(_functions())
@settings(max_examples=100, deadline=None)
def test_roundtrip_structural_equality(f):
    assert parse(format_function(f)) == f


def test_whitespace_insignificant():
    assert parse(" t ^ -0.25 * L ^ -0.5 + 2 * t ") == parse("t^-0.25*L^-0.5+2*t")


def test_str_of_zero():
    assert format_function(parse("0")) == "0"
    assert str(parse("3*t - 3*t")) == "0"


def test_ealpha_edge_values():
    e = ealpha(0.25)
    # evaluation goes through exp(a log t), so allow an ulp of slack
    assert math.isclose(e.evaluate(0.125), 0.5, rel_tol=1e-14)
    assert math.isclose(e.evaluate(0.25), 1.0, rel_tol=1e-14)
    assert e.evaluate(1.0) == 1.0
    with pytest.raises(Exception):
        ealpha(0.0)
    with pytest.raises(Exception):
        ealpha(1.5)
