import sys
from pathlib import Path

import pytest
from sympy import Poly, QQ

sys.path.append(str(Path(__file__).resolve().parents[1]))

from src.algebra.number_fields import extend_field, field_degree, field_label, is_rational_field, norm_to_rationals
from src.algebra.polynomials import TAU, X, Y, as_poly, is_constant, leading_coeff_in
from src.algebra.shear import find_shear, shear
from src.errors import Instability
from src.utils.sampling import SampleStream


def test_rational_field():
    assert is_rational_field(QQ)
    assert field_degree(QQ) == 1
    assert field_label(QQ) == "QQ"


def test_extend_by_square_root():
    K2, theta = extend_field(QQ, Poly(TAU ** 2 - 2, TAU, domain=QQ))
    assert field_degree(K2) == 2
    assert theta * theta == K2.convert(2)
    assert field_label(K2).startswith("QQ[a]/(")


def test_norm_collects_conjugates():
    K2, theta = extend_field(QQ, Poly(TAU ** 2 - 2, TAU, domain=QQ))
    p = Poly.from_list([K2.one, K2.neg(theta)], TAU, domain=K2)
    assert norm_to_rationals(p) == Poly(TAU ** 2 - 2, TAU, domain=QQ)
    assert norm_to_rationals(Poly(TAU + 1, TAU, domain=QQ)) == Poly(TAU + 1, TAU, domain=QQ)


def test_shear_makes_leading_coefficient_constant():
    p = as_poly(X * Y + X)
    assert shear(p, 2) == as_poly((X + 2 * Y) * Y + X + 2 * Y)
    a = find_shear([p, as_poly(X ** 2 + Y)], SampleStream(seed=0))
    assert 1 <= a <= 97
    assert is_constant(leading_coeff_in(shear(p, a), Y))


def test_find_shear_gives_up():
    with pytest.raises(Instability):
        find_shear([as_poly(X * Y)], SampleStream(seed=0), attempts=0)
