"""QQ 上の 1 変数補間: Newton 形式と Cauchy の有理関数復元。"""
from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from sympy import Poly, QQ, Rational, Symbol

from src.algebra.polynomials import T


def newton_interpolate(points: Sequence[Tuple[Rational, Rational]], var: Symbol = T) -> Poly:
    """Polynomial of degree < len(points) through the given (abscissa, value) pairs."""
    xs = [Rational(p[0]) for p in points]
    table: List[Rational] = [Rational(p[1]) for p in points]
    n = len(xs)
    for level in range(1, n):
        for k in range(n - 1, level - 1, -1):
            table[k] = (table[k] - table[k - 1]) / (xs[k] - xs[k - level])
    result = Poly(table[-1] if table else 0, var, domain=QQ)
    for k in range(n - 2, -1, -1):
        result = result * Poly(var - xs[k], var, domain=QQ) + Poly(table[k], var, domain=QQ)
    return result


def rational_reconstruction(
    points: Sequence[Tuple[Rational, Rational]],
    num_bound: int,
    den_bound: int,
    var: Symbol = T,
) -> Optional[Tuple[Poly, Poly]]:
    """データに一致する (分子, モニックな分母)。次数上限に収まるものが無ければ None。

    一意性には ``len(points) >= num_bound + den_bound + 1`` が必要。
    """

    modulus = Poly(1, var, domain=QQ)
    for x, _ in points:
        modulus = modulus * Poly(var - Rational(x), var, domain=QQ)
    r0, r1 = modulus, newton_interpolate(points, var)
    v0, v1 = Poly(0, var, domain=QQ), Poly(1, var, domain=QQ)
    while not r1.is_zero and r1.degree() > num_bound:
        q, r = r0.div(r1)
        r0, r1 = r1, r
        v0, v1 = v1, v0 - q * v1
    if v1.is_zero or v1.degree() > den_bound:
        return None
    if modulus.gcd(v1).degree() > 0:
        return None
    lc = v1.LC()
    numerator, denominator = r1.quo_ground(lc), v1.quo_ground(lc)
    common = numerator.gcd(denominator)
    if not numerator.is_zero and common.degree() > 0:
        numerator, denominator = numerator.exquo(common), denominator.exquo(common)
        lc = denominator.LC()
        numerator, denominator = numerator.quo_ground(lc), denominator.quo_ground(lc)
    return numerator, denominator
