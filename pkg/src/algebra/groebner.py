"""QQ[x, y] 上の Buchberger アルゴリズム (sugar 選択戦略 + Gebauer–Möller の対更新)。

内部では sympy の ``PolyElement`` (既定は次数逆辞書式順序) で計算し、
公開関数は (x, y) の ``Poly`` を受け取って返す。
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from sympy import Poly, QQ
from sympy.polys.monomials import monomial_deg, monomial_div, monomial_divides, monomial_lcm
from sympy.polys.orderings import grevlex, lex
from sympy.polys.rings import PolyElement, PolyRing, ring

from src.algebra.polynomials import SOURCE_GENS, as_poly
from src.errors import PairBudgetExceeded, ValidationFailure

logger = logging.getLogger(__name__)

DEFAULT_PAIR_BUDGET = 20000

ORDERS = {"grevlex": grevlex, "lex": lex}

Monomial = Tuple[int, ...]


@lru_cache(maxsize=None)
def source_ring(order: str = "grevlex") -> PolyRing:
    if order not in ORDERS:
        raise ValueError(f"unknown monomial order {order!r}, expected one of {sorted(ORDERS)}")
    R, _, _ = ring("x,y", QQ, ORDERS[order])
    return R


@dataclass(frozen=True)
class GroebnerBasis:
    generators: Tuple[PolyElement, ...]
    order: str = "grevlex"

    @property
    def ring(self) -> PolyRing:
        return source_ring(self.order)

    @property
    def leading_monomials(self) -> List[Monomial]:
        return [g.LM for g in self.generators]

    @property
    def is_unit_ideal(self) -> bool:
        return any(monomial_deg(m) == 0 for m in self.leading_monomials)

    def reduce(self, p: PolyElement) -> PolyElement:
        if not self.generators:
            return p
        return p.rem(list(self.generators))

    def as_polys(self) -> List[Poly]:
        return [as_poly(g.as_expr(*SOURCE_GENS)) for g in self.generators]


@dataclass
class _Pair:
    i: int
    j: int
    lcm: Monomial
    sugar: int


def _lcm_divides(candidate: Monomial, target: Monomial) -> bool:
    return monomial_divides(candidate, target)


def _total_degree(p: PolyElement) -> int:
    return max(monomial_deg(m) for m in p.itermonoms())


def _coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def spol(f: PolyElement, g: PolyElement) -> PolyElement:
    """S-polynomial of two monic polynomials."""
    lcm = monomial_lcm(f.LM, g.LM)
    return f.mul_monom(monomial_div(lcm, f.LM)) - g.mul_monom(monomial_div(lcm, g.LM))


class _Buchberger:
    def __init__(self, R: PolyRing, pair_budget: int):
        self.R = R
        self.pair_budget = pair_budget
        self.basis: List[PolyElement] = []
        self.sugar: List[int] = []
        self.active: List[bool] = []
        self.pairs: List[_Pair] = []
        self.processed = 0

    def _pair(self, i: int, j: int) -> _Pair:
        fi, fj = self.basis[i], self.basis[j]
        lcm = monomial_lcm(fi.LM, fj.LM)
        deg = monomial_deg(lcm)
        sugar = max(
            self.sugar[i] + deg - monomial_deg(fi.LM),
            self.sugar[j] + deg - monomial_deg(fj.LM),
        )
        return _Pair(i, j, lcm, sugar)

    def update(self, h_index: int) -> None:
        """basis[h_index] を追加し、新旧の臨界対を Gebauer–Möller 規則で間引く。"""
        h = self.basis[h_index]
        candidates = [self._pair(h_index, g) for g, alive in enumerate(self.active) if alive and g != h_index]

        kept: List[_Pair] = []
        while candidates:
            pair = candidates.pop()
            other_lm = self.basis[pair.j].LM
            if _coprime(h.LM, other_lm):
                kept.append(pair)
                continue
            dominated = any(_lcm_divides(p.lcm, pair.lcm) for p in candidates) or any(
                _lcm_divides(p.lcm, pair.lcm) for p in kept
            )
            if not dominated:
                kept.append(pair)
        # Buchberger's first criterion
        new_pairs = [p for p in kept if not _coprime(h.LM, self.basis[p.j].LM)]

        survivors: List[_Pair] = []
        for pair in self.pairs:
            lm_i, lm_j = self.basis[pair.i].LM, self.basis[pair.j].LM
            if (
                not _lcm_divides(h.LM, pair.lcm)
                or monomial_lcm(lm_i, h.LM) == pair.lcm
                or monomial_lcm(h.LM, lm_j) == pair.lcm
            ):
                survivors.append(pair)
        self.pairs = survivors + new_pairs

        for g, alive in enumerate(self.active):
            if alive and g != h_index and _lcm_divides(h.LM, self.basis[g].LM):
                self.active[g] = False

    def add(self, h: PolyElement, sugar: int) -> None:
        self.basis.append(h.monic())
        self.sugar.append(sugar)
        self.active.append(True)
        self.update(len(self.basis) - 1)

    def select(self) -> _Pair:
        order = self.R.order
        best = min(range(len(self.pairs)), key=lambda k: (self.pairs[k].sugar, order(self.pairs[k].lcm)))
        return self.pairs.pop(best)

    def current(self) -> List[PolyElement]:
        return [g for g, alive in zip(self.basis, self.active) if alive]

    def run(self) -> List[PolyElement]:
        while self.pairs:
            self.processed += 1
            if self.processed > self.pair_budget:
                raise PairBudgetExceeded(f"groebner: pair budget {self.pair_budget} exhausted")
            pair = self.select()
            h = spol(self.basis[pair.i], self.basis[pair.j]).rem(self.current())
            if h:
                self.add(h, pair.sugar)
                if h.is_ground:
                    return [self.R.one]
        return self.current()


def inter_reduction(polys: Sequence[PolyElement]) -> List[PolyElement]:
    """相互簡約したモニックな基底 (先頭単項式はすべて異なる)。"""
    reduced: List[PolyElement] = []
    pending = sorted((p for p in polys if p), key=lambda p: p.ring.order(p.LM))
    for k, p in enumerate(pending):
        others = [q for q in pending[:k] + pending[k + 1:] if q]
        r = p.rem(others) if others else p
        if r:
            reduced.append(r.monic())
            pending[k] = r.monic()
        else:
            pending[k] = r
    return sorted(reduced, key=lambda p: p.ring.order(p.LM), reverse=True)


def groebner(gens: Sequence[Poly], order: str = "grevlex", pair_budget: Optional[int] = None) -> GroebnerBasis:
    """``gens`` が生成する QQ[x, y] のイデアルの簡約グレブナー基底。

    order は "grevlex" か "lex"。臨界対の処理数が pair_budget を超えたら PairBudgetExceeded。
    """

    R = source_ring(order)
    elements = [R.from_dict(as_poly(g).as_dict()) for g in gens]
    elements = [e for e in elements if e]
    if not elements:
        raise ValueError("groebner: all generators are zero")

    engine = _Buchberger(R, pair_budget or DEFAULT_PAIR_BUDGET)
    for e in sorted(elements, key=lambda p: (_total_degree(p), R.order(p.LM))):
        if e.is_ground:
            return GroebnerBasis(generators=(R.one,), order=order)
        reduced = e.rem(engine.current()) if engine.current() else e
        if not reduced:
            continue
        if reduced.is_ground:
            return GroebnerBasis(generators=(R.one,), order=order)
        engine.add(reduced, _total_degree(e))

    basis = engine.run()
    result = GroebnerBasis(generators=tuple(inter_reduction(basis)), order=order)
    logger.debug(f"groebner: {len(result.generators)} generators, {engine.processed} pairs processed")

    for e in elements:
        if result.reduce(e):
            raise ValidationFailure("groebner: an input generator does not reduce to zero")
    return result
