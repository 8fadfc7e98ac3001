import sys
from pathlib import Path

import numpy as np
import pytest
from sympy import Poly, QQ, prod

sys.path.append(str(Path(__file__).resolve().parents[1]))

from src.algebra.groebner import groebner, source_ring
from src.algebra.polynomials import S, X, Y, as_poly
from src.algebra.quotient import charpoly_of, quotient_algebra
from src.errors import NotZeroDimensional, PairBudgetExceeded

# 4 点: (1, 2), (2, 1), (-1, -2), (-2, -1)
_FOUR_POINTS = [as_poly(X ** 2 + Y ** 2 - 5), as_poly(X * Y - 2)]


def test_basis_reduces_generators_and_is_reduced():
    gb = groebner(_FOUR_POINTS)
    R = source_ring()
    for p in _FOUR_POINTS:
        assert not gb.reduce(R.from_dict(p.as_dict()))
    lms = gb.leading_monomials
    assert len(set(lms)) == len(lms)
    assert all(g.LC == 1 for g in gb.generators)


def test_unit_ideal():
    assert groebner([as_poly(X), as_poly(X - 1)]).is_unit_ideal
    assert groebner([as_poly(3)]).is_unit_ideal
    assert not groebner(_FOUR_POINTS).is_unit_ideal


def test_zero_generators_are_ignored():
    gb = groebner([as_poly(0), as_poly(X - 2), as_poly(Y)])
    assert not gb.is_unit_ideal
    assert set(gb.as_polys()) == {as_poly(X - 2), as_poly(Y)}
    with pytest.raises(ValueError):
        groebner([as_poly(0)])


def test_pair_budget_exceeded():
    with pytest.raises(PairBudgetExceeded):
        groebner(_FOUR_POINTS, pair_budget=1)


def test_lex_basis_eliminates_x():
    gb = groebner(_FOUR_POINTS, order="lex")
    univariate = [p for p in gb.as_polys() if p.degree(X) == 0]
    assert len(univariate) == 1
    assert Poly(univariate[0].as_expr(), Y, domain=QQ).degree() == 4


def test_quotient_dimension_and_charpoly():
    algebra = quotient_algebra(groebner(_FOUR_POINTS))
    assert algebra.dim == 4
    assert charpoly_of(algebra, as_poly(X)) == Poly((S ** 2 - 1) * (S ** 2 - 4), S, domain=QQ)
    # 固有値は各点での値 (x + y = ±3 が 2 回ずつ)
    assert charpoly_of(algebra, as_poly(X + Y)) == Poly((S ** 2 - 9) ** 2, S, domain=QQ)


def test_multiplication_matrices_commute():
    algebra = quotient_algebra(groebner(_FOUR_POINTS))
    mx, my = algebra.mult_matrices["x"], algebra.mult_matrices["y"]
    assert mx * my == my * mx


def test_charpoly_counts_local_multiplicity():
    # (x^2, y) : 原点の重複度 2
    algebra = quotient_algebra(groebner([as_poly(X ** 2), as_poly(Y)]))
    assert algebra.dim == 2
    assert charpoly_of(algebra, as_poly(X + 1)) == Poly((S - 1) ** 2, S, domain=QQ)


def test_positive_dimensional_ideal_is_rejected():
    with pytest.raises(NotZeroDimensional):
        quotient_algebra(groebner([as_poly(X * Y)]))


def test_unit_ideal_quotient_is_empty():
    algebra = quotient_algebra(groebner([as_poly(1)]))
    assert algebra.dim == 0
    assert charpoly_of(algebra, as_poly(X)) == Poly(1, S, domain=QQ)


def test_charpoly_of_constant_is_a_power():
    algebra = quotient_algebra(groebner(_FOUR_POINTS))
    assert charpoly_of(algebra, as_poly(3)) == Poly((S - 3) ** 4, S, domain=QQ)


def _trace(algebra, p):
    return -charpoly_of(algebra, p).nth(algebra.dim - 1)


def _split_system(rng):
    xs = sorted({int(v) for v in rng.integers(-6, 7, size=3)})
    ys = sorted({int(v) for v in rng.integers(-6, 7, size=2)})
    gens = [as_poly(prod(X - a for a in xs)), as_poly(prod(Y - b for b in ys))]
    return gens, xs, ys


def test_stickelberger_on_random_split_systems():
    rng = np.random.default_rng(0)
    for _ in range(5):
        gens, xs, ys = _split_system(rng)
        algebra = quotient_algebra(groebner(gens))
        assert algebra.dim == len(xs) * len(ys)
        expected_x = prod((S - a) ** len(ys) for a in xs)
        expected_xy = prod(S - a * b for a in xs for b in ys)
        assert charpoly_of(algebra, as_poly(X)) == Poly(expected_x, S, domain=QQ)
        assert charpoly_of(algebra, as_poly(X * Y)) == Poly(expected_xy, S, domain=QQ)
        mx, my = algebra.mult_matrices["x"], algebra.mult_matrices["y"]
        assert mx * my == my * mx


def test_trace_is_linear():
    rng = np.random.default_rng(1)
    for _ in range(5):
        gens, _, _ = _split_system(rng)
        algebra = quotient_algebra(groebner(gens))
        p = as_poly(int(rng.integers(-4, 5)) * X ** 2 + int(rng.integers(-4, 5)) * Y)
        q = as_poly(int(rng.integers(-4, 5)) * X * Y + 1)
        assert charpoly_of(algebra, p + q).degree() == algebra.dim
        assert _trace(algebra, p + q) == _trace(algebra, p) + _trace(algebra, q)


def test_groebner_honours_the_order_name():
    assert groebner(_FOUR_POINTS, order="lex").order == "lex"
    with pytest.raises(ValueError):
        groebner(_FOUR_POINTS, order="deglex")
