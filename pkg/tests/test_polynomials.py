import sys
from pathlib import Path

import numpy as np
from sympy import Poly, QQ, Rational

sys.path.append(str(Path(__file__).resolve().parents[1]))

from src.algebra.polynomials import (
    S,
    T,
    X,
    Y,
    as_poly,
    canonical,
    coefficients_in,
    content_in,
    format_poly,
    gcd_poly,
    is_constant,
    leading_coeff_in,
    primitive_part_in,
    radical,
    resultant,
    squarefree,
)
from src.utils.parser import parse_poly


def _random_poly(rng, degree=3):
    terms = {}
    for i in range(degree + 1):
        for j in range(degree + 1 - i):
            terms[(i, j)] = int(rng.integers(-5, 6))
    return Poly.from_dict(terms, X, Y, domain=QQ)


def test_canonical_clears_denominators_and_sign():
    p = as_poly(-Rational(1, 2) * X ** 2 + Rational(3, 4) * Y)
    assert canonical(p) == as_poly(2 * X ** 2 - 3 * Y)


def test_gcd_poly_is_canonical_and_handles_zero():
    p = as_poly((X - Y) * (X + 1))
    q = as_poly(-3 * (X - Y) * (Y + 2))
    assert gcd_poly(p, q) == as_poly(X - Y)
    assert gcd_poly(p, as_poly(0)) == canonical(p)


def test_squarefree_reconstructs_input():
    p = as_poly(6 * (X - 1) ** 3 * (X + Y) ** 2 * (Y - 2))
    dec = squarefree(p)
    assert dec.reconstruct((X, Y)) == p
    assert dec.multiplicity_of(as_poly(X - 1)) == 3
    assert dec.multiplicity_of(as_poly(X + Y)) == 2
    assert dec.multiplicity_of(as_poly(X + 7)) == 0
    assert radical(p) == canonical(as_poly((X - 1) * (X + Y) * (Y - 2)))


def test_resultant_is_multiplicative():
    rng = np.random.default_rng(0)
    for _ in range(5):
        a, b, c = (_random_poly(rng, 2) for _ in range(3))
        if a.degree(Y) < 1 or b.degree(Y) < 1 or c.degree(Y) < 1:
            continue
        lhs = resultant(a * b, c, Y)
        rhs = resultant(a, c, Y) * resultant(b, c, Y)
        assert lhs == rhs


def _with_y(rng, degree=2):
    while True:
        p = _random_poly(rng, degree)
        if p.degree(Y) >= 1:
            return p


def test_resultant_is_antisymmetric():
    rng = np.random.default_rng(1)
    for _ in range(5):
        p, q = _with_y(rng), _with_y(rng, 3)
        sign = (-1) ** (p.degree(Y) * q.degree(Y))
        assert resultant(p, q, Y) == resultant(q, p, Y) * sign


def test_resultant_of_linear_factors():
    rng = np.random.default_rng(2)
    for _ in range(10):
        a, b, c = (Rational(int(rng.integers(-20, 21)), int(rng.integers(1, 8))) for _ in range(3))
        if a == b:
            continue
        r = resultant(as_poly((Y - a) * (Y - b)), as_poly(Y - c), Y)
        assert r == Poly((c - a) * (c - b), X, domain=QQ)


def test_squarefree_of_random_products():
    rng = np.random.default_rng(3)
    for _ in range(5):
        p = as_poly(Rational(int(rng.integers(1, 9)), int(rng.integers(1, 9))))
        for _ in range(3):
            factor = _random_poly(rng, 1)
            if not is_constant(factor):
                p = p * factor ** int(rng.integers(1, 4))
        dec = squarefree(p)
        assert dec.reconstruct((X, Y)) == p
        bases = [b for b, _ in dec.factors]
        for i, b in enumerate(bases):
            assert squarefree(b).factors == ((b, 1),)
            for other in bases[i + 1:]:
                assert is_constant(gcd_poly(b, other))


def test_resultant_with_constant_in_variable():
    p = as_poly(X * Y + 1)
    q = as_poly(X + 2)
    assert resultant(p, q, Y) == Poly(X + 2, X, domain=QQ)


def test_coefficients_content_and_primitive_part():
    R = Poly(4 * S * T * (S - 1) + 4 * S * (S - 1), S, T, domain=QQ)
    coeffs = coefficients_in(R, T)
    assert set(coeffs) == {0, 1}
    assert leading_coeff_in(R, T) == Poly(4 * S ** 2 - 4 * S, S, domain=QQ)
    assert content_in(R, T) == Poly(S ** 2 - S, S, domain=QQ)
    assert primitive_part_in(R, T) == Poly(T + 1, S, T, domain=QQ)


def test_format_poly_round_trips_through_parser():
    for text in ["y + x*y^2", "x^2 + y^3", "-1/2*x*y + 3", "x - y", "0"]:
        p = parse_poly(text)
        assert parse_poly(format_poly(p)) == p


def test_format_poly_layout():
    assert format_poly(as_poly(X * Y ** 2 + Y)) == "x*y^2 + y"
    assert format_poly(as_poly(-Rational(1, 2) * X + 1)) == "-1/2*x + 1"
