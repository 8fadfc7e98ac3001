"""組 (f, g) のアフィン判別式。

臨界因子 div(J) を (f, g) で押し出すのに、等位曲線 g = t0 を 1 本ずつ使う。
QQ[x, y]/(J, g - t0) 上の f 倍写像の特性多項式が、その等位線上の臨界値を重複度つきで与える。
t0 を何点か取り、係数を t の有理関数として復元すると R(s, t) が得られる。
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from sympy import Poly, QQ, Rational

from src.algebra.groebner import groebner
from src.algebra.interpolation import rational_reconstruction
from src.algebra.places import Place, order_at_place
from src.algebra.polynomials import (
    S,
    T,
    X,
    Y,
    canonical,
    gcd_poly,
    is_constant,
    leading_coeff_in,
    primitive_part_in,
    squarefree,
)
from src.algebra.quotient import charpoly_of, quotient_algebra
from src.analysis.report import PlaceEntry
from src.errors import BadSample, ValidationFailure
from src.utils.sampling import SampleStream

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class JacobianPoly:
    J: Poly

    @property
    def is_zero(self) -> bool:
        return self.J.is_zero

    @property
    def degree(self) -> int:
        return 0 if self.J.is_zero else int(self.J.total_degree())


@dataclass
class PushforwardPoly:
    R: Poly
    deg_bounds: Tuple[int, int]
    samples_used: List[Rational] = field(default_factory=list)
    bound_used: int = 0


def jacobian(f: Poly, g: Poly) -> JacobianPoly:
    return JacobianPoly(J=f.diff(X) * g.diff(Y) - f.diff(Y) * g.diff(X))


def dependence_test(J: JacobianPoly) -> bool:
    """f, g が代数的に従属 (J が恒等的に 0) なら True。"""
    return J.is_zero


def fiber_charpoly(
    f: Poly,
    g: Poly,
    J: JacobianPoly,
    t0: Rational,
    pair_budget: Optional[int] = None,
    order: str = "grevlex",
) -> Poly:
    """等位線 g = t0 上の f の臨界値 (s のモニック多項式、重複度つき)。"""
    level = g - Poly(t0, *g.gens, domain=QQ)
    if not is_constant(gcd_poly(J.J, level)):
        raise BadSample(f"t0={t0}: the critical locus shares a component with g = t0")
    algebra = quotient_algebra(groebner([J.J, level], order=order, pair_budget=pair_budget))
    return charpoly_of(algebra, f)


def _critical_count_on_f_level(f: Poly, J: JacobianPoly, s0: Rational, pair_budget: Optional[int], order: str) -> int:
    level = f - Poly(s0, *f.gens, domain=QQ)
    if not is_constant(gcd_poly(J.J, level)):
        raise BadSample(f"s0={s0}: the critical locus shares a component with f = s0")
    return quotient_algebra(groebner([J.J, level], order=order, pair_budget=pair_budget)).dim


class _SampleCollector:
    """Good samples t0 -> charpoly, keeping only those of the generic (maximal) degree."""

    def __init__(self, f: Poly, g: Poly, J: JacobianPoly, stream: SampleStream, retries: int, pair_budget, order: str):
        self.f, self.g, self.J = f, g, J
        self.stream = stream
        self.retries = retries
        self.pair_budget = pair_budget
        self.order = order
        self.samples: Dict[Rational, Poly] = {}
        self.degree = -1
        self.bad = 0

    def _bad(self, reason: str) -> None:
        self.bad += 1
        logger.debug(f"discarded sample: {reason}")
        if self.bad > self.retries:
            raise BadSample(f"more than {self.retries} bad samples while sampling levels of g")

    def draw(self) -> Tuple[Rational, Poly]:
        while True:
            t0 = self.stream.next()
            try:
                cp = fiber_charpoly(self.f, self.g, self.J, t0, self.pair_budget, self.order)
            except BadSample as exc:
                self._bad(str(exc))
                continue
            deg = int(cp.degree())
            if deg < self.degree:
                self._bad(f"t0={t0}: degree {deg} below generic degree {self.degree}")
                continue
            if deg > self.degree:
                if self.samples:
                    logger.debug(f"generic degree raised to {deg}, dropping {len(self.samples)} samples")
                self.samples.clear()
                self.degree = deg
            return t0, cp

    def fill(self, count: int) -> None:
        while len(self.samples) < count:
            t0, cp = self.draw()
            self.samples[t0] = cp


def _reconstruct(samples: Dict[Rational, Poly], degree: int, bound: int) -> Optional[Poly]:
    points = sorted(samples.items())
    coefficient_fns: List[Tuple[Poly, Poly]] = []
    for i in range(1, degree + 1):
        data = [(t0, cp.nth(degree - i)) for t0, cp in points]
        fitted = rational_reconstruction(data, bound, bound, T)
        if fitted is None:
            return None
        coefficient_fns.append(fitted)
    common = Poly(1, T, domain=QQ)
    for _, den in coefficient_fns:
        common = common.lcm(den)
    R = Poly(0, S, T, domain=QQ)
    R += Poly(common.as_expr() * S ** degree, S, T, domain=QQ)
    for i, (num, den) in enumerate(coefficient_fns, start=1):
        scaled = num * common.exquo(den)
        R += Poly(scaled.as_expr() * S ** (degree - i), S, T, domain=QQ)
    return canonical(R)


def _agrees(R: Poly, t0: Rational, cp: Poly) -> bool:
    specialized = Poly(R.as_expr().subs(T, t0), S, domain=QQ)
    if specialized.is_zero or specialized.degree() != cp.degree():
        return False
    return specialized.monic() == cp


def pushforward_polynomial(
    f: Poly,
    g: Poly,
    J: JacobianPoly,
    settings: Optional[Dict[str, Any]] = None,
    stream: Optional[SampleStream] = None,
) -> PushforwardPoly:
    """div(J) の押し出しの定義多項式 R(s, t) (s = 定数 の直線成分を除く)。

    Bézout の上限と f の等位線上の臨界点数から補間次数を決め、足りなければ一度だけ引き上げる。
    新しい t0 での特性多項式と一致しなければ ValidationFailure。
    """
    if J.is_zero:
        raise ValueError("pushforward_polynomial needs an independent pair (J != 0)")
    settings = settings or {}
    sampling = settings.get("sampling", {})
    pair_budget = settings.get("groebner", {}).get("pair_budget")
    order = settings.get("groebner", {}).get("order", "grevlex")
    factor = int(settings.get("interpolation", {}).get("escalation_factor", 2))
    retries = int(sampling.get("bad_sample_retries", 20))
    checks = int(sampling.get("validation_samples", 3))
    stream = stream or SampleStream(
        seed=int(sampling.get("seed", 0)),
        low=int(sampling.get("t_min", 1000)),
        high=int(sampling.get("t_max", 1000000)),
    )

    deg_f, deg_g = int(f.total_degree()), int(g.total_degree())
    bezout_t, bezout_s = J.degree * deg_f, J.degree * deg_g
    if J.degree == 0:
        return PushforwardPoly(R=Poly(1, S, T, domain=QQ), deg_bounds=(0, 0))

    bound = bezout_t
    attempts = 0
    while True:
        try:
            bound = min(bezout_t, max(_critical_count_on_f_level(f, J, stream.next(), pair_budget, order) for _ in range(2)))
            break
        except BadSample as exc:
            attempts += 1
            logger.debug(f"sharp bound sample rejected: {exc}")
            if attempts > retries:
                break
    bound = max(bound, 1)

    collector = _SampleCollector(f, g, J, stream, retries, pair_budget, order)
    for escalation in range(2):
        collector.fill(2 * bound + 2)
        R = _reconstruct(collector.samples, collector.degree, bound)
        if R is not None:
            fresh = [collector.draw() for _ in range(checks)]
            if all(_agrees(R, t0, cp) for t0, cp in fresh):
                logger.info(
                    f"pushforward R(s,t) reconstructed: deg_s={R.degree(S)} deg_t={R.degree(T)} "
                    f"from {len(collector.samples)} samples"
                )
                return PushforwardPoly(
                    R=R,
                    deg_bounds=(bezout_s, bezout_t),
                    samples_used=sorted(collector.samples),
                    bound_used=bound,
                )
        if escalation == 0:
            bound = min(bound * factor, 2 * bezout_t)
            logger.info(f"interpolation bound escalated to {bound}")
    raise ValidationFailure("reconstructed R(s,t) disagrees with fresh level samples")


def critical_value_leading_coeff(R: Poly) -> Poly:
    """R の t についての原始部分の lc_t。根が判別式の到達する有限の place。"""
    reduced = primitive_part_in(R, T)
    return Poly(leading_coeff_in(reduced, T).as_expr(), S, domain=QQ)


def delta1_finite_germ(R: PushforwardPoly, place: Place) -> int:
    lc = critical_value_leading_coeff(R.R)
    if is_constant(lc):
        return 0
    return order_at_place(lc, place)


def irregularity_finite(
    f: Poly,
    g: Poly,
    place: Place,
    R: Optional[PushforwardPoly] = None,
    settings: Optional[Dict[str, Any]] = None,
) -> PlaceEntry:
    """有限の place での IR。そこに届くのはアフィン判別式だけ。"""
    if place.is_infinity:
        raise ValueError("irregularity_finite handles finite places only")
    if R is None:
        R = pushforward_polynomial(f, g, jacobian(f, g), settings)
    ir = delta1_finite_germ(R, place)
    return PlaceEntry(place=place, ir=ir, delta1=ir, delta2=0)


def profile_finite(R: PushforwardPoly) -> List[PlaceEntry]:
    """lc_t(PP_t(R)) の既約因子ごとに 1 件。それ以外の有限の place の IR は 0。"""

    lc = critical_value_leading_coeff(R.R)
    if is_constant(lc):
        return []
    entries = []
    for factor, k in squarefree(lc).factors:
        for irreducible, _ in factor.factor_list()[1]:
            place = Place.algebraic(irreducible)
            entries.append(PlaceEntry(place=place, ir=k, delta1=k, delta2=0))
    return sorted(entries, key=lambda e: e.place.sort_key())
