"""QQ 上の多変数多項式の厳密計算ヘルパー。

モジュール間で受け渡す多項式はすべて domain QQ、生成元を明示した sympy の ``Poly``。
正規形は整数係数の content が 1、生成元の辞書式順序で先頭係数が正。
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from sympy import Poly, QQ, Rational, Symbol, symbols

logger = logging.getLogger(__name__)

X, Y, S, T, TAU, U, V, W = symbols("x y s t tau u v w")

SOURCE_GENS = (X, Y)
TARGET_GENS = (S, T)

Number = Union[int, Fraction, Rational]


def as_poly(expr, *gens: Symbol) -> Poly:
    """``expr`` を QQ 上の Poly に変換する。gens 省略時は (x, y)。"""
    if isinstance(expr, Poly):
        expr = expr.as_expr()
    return Poly(expr, *(gens or SOURCE_GENS), domain=QQ)


def on_gens(p: Poly, gens: Sequence[Symbol]) -> Poly:
    """Re-express ``p`` over ``gens`` (which must contain every variable p uses)."""
    if tuple(p.gens) == tuple(gens):
        return p
    return Poly(p.as_expr(), *gens, domain=QQ)


def canonical(p: Poly) -> Poly:
    """整数係数・原始的・辞書式の先頭係数が正、に正規化する。"""
    if p.is_zero:
        return p
    _, integral = p.clear_denoms(convert=True)
    _, integral = integral.primitive()
    if integral.LC() < 0:
        integral = -integral
    return integral.set_domain(QQ)


def is_constant(p: Poly) -> bool:
    return p.is_zero or p.total_degree() <= 0


def to_rational(value: Number) -> Rational:
    if isinstance(value, Fraction):
        return Rational(value.numerator, value.denominator)
    return Rational(value)


def gcd_poly(p: Poly, q: Poly, main_var: Optional[Symbol] = None) -> Poly:
    """``p`` と ``q`` の正規化された gcd。``gcd(p, 0)`` は p の原始部分。

    ``main_var`` は PRS の主変数 (他の生成元は係数として扱う)。
    """
    gens = tuple(p.gens)
    q = on_gens(q, gens)
    if p.is_zero and q.is_zero:
        return p
    if q.is_zero:
        return canonical(p)
    if p.is_zero:
        return canonical(q)
    if main_var is not None and main_var in gens and gens[0] != main_var:
        order = (main_var,) + tuple(g for g in gens if g != main_var)
        h = p.reorder(*order).gcd(q.reorder(*order))
        return canonical(on_gens(h, gens))
    return canonical(p.gcd(q))


@dataclass(frozen=True)
class SquarefreeDecomposition:
    unit: Rational
    factors: Tuple[Tuple[Poly, int], ...] = field(default_factory=tuple)

    def reconstruct(self, gens: Sequence[Symbol]) -> Poly:
        result = Poly(self.unit, *gens, domain=QQ)
        for factor, k in self.factors:
            result = result * on_gens(factor, gens) ** k
        return result

    def multiplicity_of(self, b: Poly) -> int:
        for factor, k in self.factors:
            if factor.rem(on_gens(b, factor.gens)).is_zero:
                return k
        return 0


def squarefree(p: Poly) -> SquarefreeDecomposition:
    """Yun 型の無平方分解。各因子は正規形。"""
    if p.is_zero:
        raise ValueError("squarefree decomposition of the zero polynomial")
    _, raw = p.sqf_list()
    factors: List[Tuple[Poly, int]] = []
    lc_product = Rational(1)
    for factor, k in raw:
        if is_constant(factor):
            continue
        b = canonical(factor)
        factors.append((b, k))
        lc_product *= b.LC() ** k
    factors.sort(key=lambda item: item[1])
    return SquarefreeDecomposition(unit=p.LC() / lc_product, factors=tuple(factors))


def radical(p: Poly) -> Poly:
    """Product of the squarefree factors (canonical)."""
    dec = squarefree(p)
    return canonical(reduce(lambda acc, item: acc * item[0], dec.factors, Poly(1, *p.gens, domain=QQ)))


def resultant(p: Poly, q: Poly, var: Symbol) -> Poly:
    """``var`` を消去する Sylvester 終結式。残りの生成元の多項式として返す。"""
    gens = tuple(p.gens)
    q = on_gens(q, gens)
    others = tuple(g for g in gens if g != var) or (var,)
    if p.is_zero or q.is_zero:
        return Poly(0, *others, domain=QQ)
    dp = p.degree(var) if var in gens else 0
    dq = q.degree(var) if var in gens else 0
    if dp == 0 or dq == 0:
        value = p.as_expr() ** dq if dp == 0 else q.as_expr() ** dp
        if dp == 0 and dq == 0:
            value = 1
        return Poly(value, *others, domain=QQ)
    order = (var,) + tuple(g for g in gens if g != var)
    res = p.reorder(*order).resultant(q.reorder(*order))
    if isinstance(res, Poly):
        return on_gens(res, others)
    return Poly(res, *others, domain=QQ)


def coefficients_in(p: Poly, var: Symbol) -> Dict[int, Poly]:
    """``p`` を ``var`` の多項式と見たときの係数 (次数 -> 他の生成元の多項式)。"""
    gens = tuple(p.gens)
    idx = gens.index(var)
    rest = tuple(g for g in gens if g != var) or (var,)
    buckets: Dict[int, Dict[Tuple[int, ...], Rational]] = {}
    for monom, coeff in p.terms():
        key = monom[:idx] + monom[idx + 1:] if len(gens) > 1 else (0,)
        buckets.setdefault(monom[idx], {})[key] = coeff
    return {k: Poly.from_dict(terms, *rest, domain=QQ) for k, terms in buckets.items()}


def leading_coeff_in(p: Poly, var: Symbol) -> Poly:
    coeffs = coefficients_in(p, var)
    return coeffs[max(coeffs)]


def content_in(p: Poly, var: Symbol) -> Poly:
    """``var`` についての content (係数の gcd)。"""

    coeffs = list(coefficients_in(p, var).values())
    return reduce(lambda acc, c: gcd_poly(acc, c), coeffs[1:], canonical(coeffs[0]))


def primitive_part_in(p: Poly, var: Symbol) -> Poly:
    """``p`` divided by its ``var``-content, canonical."""
    if p.is_zero:
        return p
    content = on_gens(content_in(p, var), p.gens)
    return canonical(p.exquo(content))


def degree_in(p: Poly, var: Symbol) -> int:
    if p.is_zero or var not in p.gens:
        return 0
    return int(p.degree(var))


def substitute(p: Poly, mapping: Dict[Symbol, object], gens: Optional[Sequence[Symbol]] = None) -> Poly:
    """Simultaneous substitution, re-expressed over ``gens`` (default: p's generators)."""
    expr = p.as_expr().subs(mapping, simultaneous=True)
    return Poly(expr, *(gens or p.gens), domain=QQ)


def evaluate(p: Poly, values: Dict[Symbol, Number]) -> Rational:
    """Exact value of ``p`` at a rational point (all generators assigned)."""
    return Rational(p.as_expr().subs({g: to_rational(values[g]) for g in p.gens}))


def max_coefficient_magnitude(polys: Iterable[Poly]) -> Rational:
    mags = [abs(c) for p in polys if not p.is_zero for c in p.coeffs()]
    return max(mags) if mags else Rational(0)


def format_poly(p: Poly) -> str:
    """Print ``p`` in the input grammar (``*``, ``^``, rational literals)."""
    if p.is_zero:
        return "0"
    pieces: List[Tuple[str, str]] = []
    for monom, coeff in p.terms():
        factors = []
        for gen, exp in zip(p.gens, monom):
            if exp == 1:
                factors.append(str(gen))
            elif exp > 1:
                factors.append(f"{gen}^{exp}")
        magnitude = abs(coeff)
        if not factors:
            body = str(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(magnitude)] + factors)
        sign = "-" if coeff < 0 else "+"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text
