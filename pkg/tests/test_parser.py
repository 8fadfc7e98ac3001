import sys
from pathlib import Path

import pytest
from sympy import Poly, QQ, Rational

sys.path.append(str(Path(__file__).resolve().parents[1]))

from src.algebra.places import Place
from src.algebra.polynomials import S, X, Y, as_poly
from src.errors import ParseError
from src.utils.parser import parse_place, parse_poly


def test_parse_poly_grammar():
    assert parse_poly("y + x*y^2") == as_poly(Y + X * Y ** 2)
    assert parse_poly("-(x - 1)^2 + 3/4") == as_poly(-(X - 1) ** 2 + Rational(3, 4))
    assert parse_poly("  2 * x ^ 3 ") == as_poly(2 * X ** 3)
    assert parse_poly("0").is_zero


@pytest.mark.parametrize(
    "text, message",
    [
        ("x^(2)", "exponent must be a natural number literal"),
        ("x^-1", "exponent must be a natural number literal"),
        ("x + z", "unknown variable 'z'"),
        ("x +", "unexpected end of input"),
        ("(x + y", "expected ')'"),
        ("1/0", "division by zero"),
        ("", "empty expression"),
        ("x y", "unexpected 'y'"),
    ],
)
def test_parse_errors(text, message):
    with pytest.raises(ParseError) as excinfo:
        parse_poly(text)
    assert message in str(excinfo.value)
    assert excinfo.value.exit_code == 2


def test_error_points_at_position():
    with pytest.raises(ParseError) as excinfo:
        parse_poly("x + z")
    assert excinfo.value.position == 4


def test_parse_place():
    assert parse_place("inf") == Place.infinity()
    assert parse_place("∞") == Place.infinity()
    assert parse_place("1/2") == Place.rational(Rational(1, 2))
    assert parse_place("-3") == Place.rational(-3)
    assert parse_place("2*s - 1") == Place.rational(Rational(1, 2))
    assert parse_place("s^2 - 2") == Place.algebraic(Poly(S ** 2 - 2, S, domain=QQ))


def test_parse_place_rejects_repeated_factor():
    with pytest.raises(ParseError):
        parse_place("(s^2 - 2)^2")
