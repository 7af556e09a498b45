from fractions import Fraction

import pytest

from gawb.parse import PolyParseError, UndeclaredVariableError, parse_poly
from gawb.poly import Poly, mono


def test_three_term_relation():
    p = parse_poly("x^2*v - y^2*u - 1", ["x", "y", "u", "v"])
    assert p.terms == {
        mono(x=2, v=1): 1,
        mono(y=2, u=1): -1,
        (): -1,
    }


def test_rational_coefficient():
    p = parse_poly("5/16*v^2*x", ["x", "v"])
    assert p.terms == {mono(v=2, x=1): Fraction(5, 16)}


def test_laurent_monomial():
    p = parse_poly("x^-3*y^-1")
    assert p == Poly.monomial(mono(x=-3, y=-1))


def test_parentheses_and_unary_minus():
    assert parse_poly("-(x - y)^2") == -(parse_poly("x-y") ** 2)
    assert parse_poly("-x + y") == parse_poly("y") - parse_poly("x")


def test_explicit_star_required():
    with pytest.raises(PolyParseError):
        parse_poly("2x")


def test_error_positions():
    with pytest.raises(PolyParseError) as e:
        parse_poly("x + ")
    assert e.value.position == 4
    with pytest.raises(PolyParseError) as e:
        parse_poly("x ^ y")
    assert e.value.position == 4
    with pytest.raises(PolyParseError) as e:
        parse_poly("x + $")
    assert e.value.position == 4


def test_undeclared_variable():
    with pytest.raises(UndeclaredVariableError) as e:
        parse_poly("x + zz", ["x"])
    assert e.value.name == "zz"
    assert e.value.position == 4


def test_negative_exponent_of_sum_rejected():
    with pytest.raises(PolyParseError):
        parse_poly("(x + y)^-1")


def test_zero_denominator():
    with pytest.raises(PolyParseError):
        parse_poly("1/0")


def test_division_only_for_literals():
    with pytest.raises(PolyParseError):
        parse_poly("x/2")
