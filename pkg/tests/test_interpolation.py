import sys
from pathlib import Path

from sympy import Poly, QQ, Rational

sys.path.append(str(Path(__file__).resolve().parents[1]))

from src.algebra.interpolation import newton_interpolate, rational_reconstruction
from src.algebra.polynomials import T


def test_newton_interpolation_recovers_polynomial():
    target = Poly(3 * T ** 3 - T + Rational(1, 2), T, domain=QQ)
    points = [(Rational(t), target.eval(t)) for t in (2, 5, -1, 7)]
    assert newton_interpolate(points) == target


def test_rational_reconstruction():
    points = [(Rational(t), Rational(t + 1, t - 3)) for t in (10, 11, 12, 13, 14)]
    numerator, denominator = rational_reconstruction(points, 1, 1)
    assert numerator == Poly(T + 1, T, domain=QQ)
    assert denominator == Poly(T - 3, T, domain=QQ)


def test_rational_reconstruction_of_reciprocal():
    points = [(Rational(t), Rational(1, 4 * t)) for t in (1000, 2000, 3000, 4000)]
    numerator, denominator = rational_reconstruction(points, 1, 1)
    assert numerator == Poly(Rational(1, 4), T, domain=QQ)
    assert denominator == Poly(T, T, domain=QQ)


def test_rational_reconstruction_rejects_tight_bounds():
    points = [(Rational(t), Rational(1, t ** 2 + 1)) for t in range(1, 8)]
    assert rational_reconstruction(points, 1, 1) is None
