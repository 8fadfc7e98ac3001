"""射影直線の点 (place): 有理数、s の最小多項式で表すガロア軌道、無限遠のいずれか。"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from sympy import Poly, QQ, Rational

from src.algebra.polynomials import S, Number, canonical, format_poly, gcd_poly, squarefree, to_rational

RATIONAL = "rational"
ALGEBRAIC = "algebraic"
INFINITY = "infinity"


@dataclass(frozen=True)
class Place:
    kind: str
    value: Optional[Rational] = None
    min_poly: Optional[Poly] = None

    @classmethod
    def rational(cls, c: Number) -> "Place":
        return cls(kind=RATIONAL, value=to_rational(c))

    @classmethod
    def infinity(cls) -> "Place":
        return cls(kind=INFINITY)

    @classmethod
    def algebraic(cls, m: Poly) -> "Place":
        """s の多項式から place を作る。1 次なら有理点になる。"""
        m = Poly(m.as_expr(), S, domain=QQ).monic()
        if m.degree() < 1:
            raise ValueError(f"place polynomial must have positive degree: {m.as_expr()}")
        if m.degree() == 1:
            return cls.rational(-m.nth(0))
        if gcd_poly(m, m.diff(S)).degree() > 0:
            raise ValueError(f"place polynomial is not squarefree: {m.as_expr()}")
        return cls(kind=ALGEBRAIC, min_poly=m)

    @property
    def is_infinity(self) -> bool:
        return self.kind == INFINITY

    @property
    def degree(self) -> int:
        """Number of points of the projective line in this place."""
        if self.kind == ALGEBRAIC:
            return int(self.min_poly.degree())
        return 1

    def label(self) -> str:
        if self.kind == INFINITY:
            return "inf"
        if self.kind == RATIONAL:
            return str(self.value)
        return format_poly(canonical(self.min_poly))

    def sort_key(self):
        order = {RATIONAL: 0, ALGEBRAIC: 1, INFINITY: 2}[self.kind]
        return (order, self.value if self.value is not None else 0, self.label())

    def __str__(self) -> str:
        return self.label()


def order_at_place(a: Poly, place: Place) -> int:
    """s の多項式 ``a`` (非零) の ``place`` での零点の位数。有限の place のみ。"""

    if a.is_zero:
        raise ValueError("order of the zero polynomial is undefined")
    if place.is_infinity:
        raise ValueError("order at infinity is computed by the caller from degrees")
    a = Poly(a.as_expr(), S, domain=QQ)
    if place.kind == RATIONAL:
        linear = Poly(S - place.value, S, domain=QQ)
        k = 0
        while a.degree() > 0 and a.eval(place.value) == 0:
            a = a.exquo(linear)
            k += 1
        return k
    if a.degree() < 1:
        return 0
    return squarefree(a).multiplicity_of(place.min_poly)
