"""座標変換 x <- x + a*y (シアー)。"""
from __future__ import annotations

from typing import Sequence

from sympy import Poly

from src.algebra.polynomials import X, Y, is_constant, leading_coeff_in, substitute
from src.errors import Instability
from src.utils.sampling import SampleStream


def shear(p: Poly, a: int) -> Poly:
    """p(x + a*y, y)."""
    return substitute(p, {X: X + a * Y}, (X, Y))


def find_shear(polys: Sequence[Poly], stream: SampleStream, attempts: int = 50) -> int:
    """定数でない多項式すべての y についての先頭係数が定数になるシアー係数 a を探す。"""

    for _ in range(attempts):
        a = stream.small_int(1, 97)
        sheared = [shear(p, a) for p in polys]
        if all(is_constant(p) or is_constant(leading_coeff_in(p, Y)) for p in sheared):
            return a
    raise Instability("no shear found with constant leading coefficients in y")
