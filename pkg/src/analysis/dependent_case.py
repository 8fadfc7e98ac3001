"""代数的に従属な組 (J が恒等的に 0)。

このとき (f, g) は既約な像曲線 C = {W(s, t) = 0} を経由し、c での IR は
-chi(F) に C の (c, inf) へ入る分枝の数を掛けたもの。F は (x, y) -> C の一般ファイバー。
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

from sympy import Poly, QQ

from src.algebra.groebner import groebner
from src.algebra.places import Place, order_at_place
from src.algebra.polynomials import (
    S,
    T,
    X,
    Y,
    canonical,
    content_in,
    degree_in,
    evaluate,
    gcd_poly,
    is_constant,
    leading_coeff_in,
    on_gens,
    primitive_part_in,
    radical,
    resultant,
)
from src.algebra.shear import find_shear, shear
from src.analysis.compactification import germ_at_infinity
from src.analysis.report import PlaceEntry
from src.errors import EliminationFailure, Instability
from src.utils.sampling import SampleStream

logger = logging.getLogger(__name__)

_ELIMINATION_GENS = (X, Y, S, T)


@dataclass(frozen=True)
class ImageCurve:
    W: Poly

    @property
    def is_horizontal(self) -> bool:
        return degree_in(self.W, S) == 0


@dataclass(frozen=True)
class GenericFiberChi:
    value: int
    samples: int
    agreeing: int


def _eliminate(f: Poly, g: Poly, a: int) -> Poly:
    f_sh, g_sh = shear(f, a), shear(g, a)
    p = Poly(f_sh.as_expr() - S, *_ELIMINATION_GENS, domain=QQ)
    q = Poly(g_sh.as_expr() - T, *_ELIMINATION_GENS, domain=QQ)
    res = resultant(p, q, Y)
    return on_gens(content_in(res, X), (S, T))


def image_curve(f: Poly, g: Poly, settings: Optional[Dict[str, Any]] = None, stream: Optional[SampleStream] = None) -> ImageCurve:
    """Squarefree W(s, t) with W(f, g) = 0."""
    settings = settings or {}
    stream = stream or SampleStream(seed=int(settings.get("sampling", {}).get("seed", 0)))
    checks = int(settings.get("dependent", {}).get("image_checks", 20))

    a1 = find_shear([f, g], stream)
    a2 = a1
    while a2 == a1:
        a2 = find_shear([f, g], stream)
    W = gcd_poly(_eliminate(f, g, a1), _eliminate(f, g, a2))
    if is_constant(W):
        raise EliminationFailure("elimination produced no image curve")
    W = radical(W)

    for _ in range(checks):
        x0, y0 = stream.point()
        point = {X: x0, Y: y0}
        values = {S: evaluate(on_gens(f, (X, Y)), point), T: evaluate(on_gens(g, (X, Y)), point)}
        if evaluate(W, values) != 0:
            raise EliminationFailure(f"W(f, g) does not vanish at ({x0}, {y0})")
    logger.info(f"image curve W = {W.as_expr()}")
    return ImageCurve(W=canonical(W))


def _fiber_chi(d: Poly, stream: SampleStream) -> int:
    a = find_shear([d], stream)
    d_sh = shear(d, a)
    n = degree_in(d_sh, Y)
    if n == 0:
        raise EliminationFailure("fiber component without y after shear")
    disc = resultant(d_sh, d_sh.diff(Y), Y)
    return n - degree_in(on_gens(disc, (X,)), X)


def chi_generic_fiber(f: Poly, g: Poly, settings: Optional[Dict[str, Any]] = None, stream: Optional[SampleStream] = None) -> GenericFiberChi:
    """(x, y) -> C の一般ファイバーのオイラー標数。ランダムなファイバーの多数決で決める。"""
    settings = settings or {}
    options = settings.get("dependent", {})
    budget = int(options.get("sample_points", 25))
    needed = int(options.get("concordant_required", 5))
    stream = stream or SampleStream(seed=int(settings.get("sampling", {}).get("seed", 0)))

    votes: Counter = Counter()
    for drawn in range(1, budget + 1):
        x0, y0 = stream.point()
        point = {X: x0, Y: y0}
        s0, t0 = evaluate(f, point), evaluate(g, point)
        d = gcd_poly(f - Poly(s0, X, Y, domain=QQ), g - Poly(t0, X, Y, domain=QQ))
        if is_constant(d):
            continue
        if not groebner([d, d.diff(X), d.diff(Y)]).is_unit_ideal:
            logger.debug(f"singular fiber through ({x0}, {y0}) skipped")
            continue
        value = _fiber_chi(d, stream)
        votes[value] += 1
        if votes[value] >= needed:
            logger.info(f"chi(F) = {value} after {drawn} fibers")
            return GenericFiberChi(value=value, samples=drawn, agreeing=votes[value])
    raise Instability(f"no Euler characteristic reached {needed} agreeing fibers: {dict(votes)}")


def branch_germ(W: Poly, place: Place) -> int:
    """W = 0 の (c, inf) へ入る分枝の数。"""
    if place.is_infinity:
        return germ_at_infinity(W)
    reduced = primitive_part_in(Poly(W.as_expr(), S, T, domain=QQ), T)
    if degree_in(reduced, T) == 0:
        return 0
    lc = Poly(leading_coeff_in(reduced, T).as_expr(), S, domain=QQ)
    if is_constant(lc):
        return 0
    return order_at_place(lc, place)


def irregularity_dependent(f: Poly, g: Poly, place: Place, chi: Optional[GenericFiberChi] = None,
                           curve: Optional[ImageCurve] = None, settings: Optional[Dict[str, Any]] = None) -> PlaceEntry:
    if curve is None:
        curve = image_curve(f, g, settings)
    if chi is None:
        chi = chi_generic_fiber(f, g, settings)
    ir = -chi.value * branch_germ(curve.W, place)
    return PlaceEntry(place=place, ir=ir, delta1=0, delta2=ir)


def profile_dependent(curve: ImageCurve, chi: GenericFiberChi) -> List[PlaceEntry]:
    """IR が 0 でない有限の place と、無限遠。"""

    entries: List[PlaceEntry] = []
    reduced = primitive_part_in(curve.W, T)
    if degree_in(reduced, T) > 0:
        lc = Poly(leading_coeff_in(reduced, T).as_expr(), S, domain=QQ)
        if not is_constant(lc):
            for factor, _ in lc.factor_list()[1]:
                place = Place.algebraic(factor)
                ir = -chi.value * branch_germ(curve.W, place)
                if ir:
                    entries.append(PlaceEntry(place=place, ir=ir, delta2=ir))
    entries.sort(key=lambda e: e.place.sort_key())
    ir_inf = -chi.value * branch_germ(curve.W, Place.infinity())
    entries.append(PlaceEntry(place=Place.infinity(), ir=ir_inf, delta2=ir_inf))
    return entries
