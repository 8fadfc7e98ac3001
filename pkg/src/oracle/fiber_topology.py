"""g の等位曲線の位相から IR を数値的に突き合わせる。

|rho| が十分大きいとき、C = {g = rho} 上の f は有限個の漸近値を除いて s 直線の分岐被覆になり、
IR_c = -chi(c の小さな穴あき円板上の C) となる。臨界値は厳密計算 (等位線上の特性多項式) で求め、
数値化するのはその因子の根だけ。「c の近く」「無限遠の近く」を決める閾値は経験則なので、
結果には ``"heuristic": true`` を付けて報告する。
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Tuple

import mpmath as mp
from sympy import Poly, QQ, Rational

from src.algebra.places import RATIONAL, Place
from src.algebra.polynomials import (
    S,
    X,
    Y,
    coefficients_in,
    degree_in,
    gcd_poly,
    is_constant,
    max_coefficient_magnitude,
    radical,
    resultant,
    squarefree,
)
from src.algebra.shear import find_shear, shear
from src.analysis.discriminant_cycle import JacobianPoly, fiber_charpoly, jacobian
from src.analysis.report import IrregularityReport, OracleComparison
from src.errors import BadSample, IllConditioned, Instability, NonConvergence
from src.oracle.root_finder import ComplexUPoly, numeric_roots, to_mpf
from src.utils.sampling import SampleStream

logger = logging.getLogger(__name__)

_SHEAR_GENS = (X, Y, S)

WeightedPolys = List[Tuple[Poly, int]]


@dataclass(frozen=True)
class OracleThresholds:
    bound: int
    log10_magnitude: float
    radius: mp.mpf
    delta: mp.mpf
    dps: int
    separation_ratio: float

    @property
    def magnitude(self) -> Rational:
        return Rational(10) ** int(math.ceil(self.log10_magnitude))


@dataclass
class FiberTopologyEstimate:
    rho: Rational
    degree_n: int
    chi_curve: int
    ram_pairs: List[Tuple[mp.mpc, int]] = field(default_factory=list)
    asymptotic_pairs: List[Tuple[mp.mpc, int]] = field(default_factory=list)
    critical_polys: WeightedPolys = field(default_factory=list)
    deficiency_polys: List[Poly] = field(default_factory=list)
    image_roots: List[mp.mpc] = field(default_factory=list)
    confidence: float = math.inf

    @property
    def dependent(self) -> bool:
        return bool(self.image_roots)

    def pairs(self) -> List[Tuple[mp.mpc, int]]:
        return self.ram_pairs + self.asymptotic_pairs


def thresholds(f: Poly, g: Poly, settings: Optional[Dict[str, Any]] = None) -> OracleThresholds:
    options = (settings or {}).get("oracle", {})
    J = jacobian(f, g)
    bound = max(J.degree, 1) * max(int(f.total_degree()), int(g.total_degree()), 1)
    if options.get("rho_log10") is not None:
        log10_magnitude = float(options["rho_log10"])
    else:
        largest = max_coefficient_magnitude([f, g])
        log10_magnitude = math.log10(1 + float(largest)) + int(options.get("rho_exponent_per_degree", 6)) * bound
    dps = int(options.get("extra_precision", 60)) + int(2 * log10_magnitude)
    with mp.workdps(dps):
        radius = mp.power(10, mp.mpf(log10_magnitude) / (2 * bound))
        delta = 1 / radius
    return OracleThresholds(
        bound=bound,
        log10_magnitude=log10_magnitude,
        radius=radius,
        delta=delta,
        dps=dps,
        separation_ratio=float(options.get("separation_ratio", 1000)),
    )


def sample_rho(th: OracleThresholds, stream: SampleStream) -> Rational:
    rho = th.magnitude * (1 + Rational(stream.small_int(1, 999), 1000))
    return rho if stream.small_int(0, 1) else -rho


def _roots_of(p: Poly, settings: Dict[str, Any]) -> List[mp.mpc]:
    options = settings.get("oracle", {})
    return numeric_roots(
        ComplexUPoly.from_poly(p),
        max_steps=int(options.get("max_steps", 400)),
        extra_precision=int(options.get("extra_precision", 60)),
    )


def _critical_values(
    f: Poly, g: Poly, J: JacobianPoly, rho: Rational, settings: Dict[str, Any]
) -> Tuple[List[Tuple[mp.mpc, int]], WeightedPolys]:
    """等位線 g = rho 上の f の臨界値と重複度。特性多項式の無平方因子だけを数値化する。"""
    options = settings.get("groebner", {})
    try:
        cp = fiber_charpoly(f, g, J, rho, options.get("pair_budget"), options.get("order", "grevlex"))
    except BadSample as exc:
        raise IllConditioned(str(exc)) from exc
    if is_constant(cp):
        return [], []
    factors = [(Poly(b.as_expr(), S, domain=QQ), k) for b, k in squarefree(cp).factors]
    pairs = [(value, k) for b, k in factors for value in _roots_of(b, settings)]
    return pairs, factors


def _asymptotic_values(coeffs: Dict[int, Poly], n: int, settings: Dict[str, Any]) -> Tuple[List[Tuple[mp.mpc, int]], List[Poly]]:
    """Values of s where j roots of P(s, .) escape to infinity, counted once per j."""
    pairs: List[Tuple[mp.mpc, int]] = []
    levels: List[Poly] = []
    h = Poly(coeffs[n].as_expr(), S, domain=QQ)
    for j in range(1, n + 1):
        if j > 1:
            h = gcd_poly(h, Poly(coeffs.get(n - j + 1, Poly(0, S, domain=QQ)).as_expr(), S, domain=QQ))
        if is_constant(h):
            break
        rad = radical(h)
        levels.append(rad)
        pairs.extend((v, 1) for v in _roots_of(rad, settings))
    return pairs, levels


def fiber_data(
    f: Poly,
    g: Poly,
    rho: Rational,
    settings: Optional[Dict[str, Any]] = None,
    stream: Optional[SampleStream] = None,
) -> FiberTopologyEstimate:
    """Critical values, asymptotic values and Euler characteristic of the curve g = rho under f."""
    settings = settings or {}
    stream = stream or SampleStream(seed=int(settings.get("sampling", {}).get("seed", 0)))
    J = jacobian(f, g)
    if is_constant(g):
        raise IllConditioned("g is constant: the level curve g = rho is empty")
    a = find_shear([f, g], stream)
    f_sh, g_sh = shear(f, a), shear(g, a)

    level = g_sh - Poly(rho, X, Y, domain=QQ)
    disc = resultant(level, g_sh.diff(Y), Y)
    chi_curve = degree_in(g_sh, Y) - degree_in(Poly(disc.as_expr(), X, domain=QQ), X)

    P = resultant(
        Poly(f_sh.as_expr() - S, *_SHEAR_GENS, domain=QQ),
        Poly(level.as_expr(), *_SHEAR_GENS, domain=QQ),
        Y,
    )
    coeffs = coefficients_in(P, X)
    n = max(k for k, c in coeffs.items() if not c.is_zero) if not P.is_zero else 0

    if J.is_zero:
        content = None
        for c in coeffs.values():
            content = c if content is None else gcd_poly(content, c)
        content = Poly(content.as_expr(), S, domain=QQ)
        if is_constant(content):
            raise IllConditioned("the level curve g = rho does not split into fibers of f")
        roots = _roots_of(radical(content), settings)
        logger.info(f"oracle (dependent): rho={rho}, chi(curve)={chi_curve}, {len(roots)} fiber values")
        return FiberTopologyEstimate(rho=rho, degree_n=n, chi_curve=chi_curve, image_roots=roots)

    ram_pairs, critical_polys = _critical_values(f, g, J, rho, settings)
    asym_pairs, levels = _asymptotic_values(coeffs, n, settings)
    excess = sum(k for _, k in ram_pairs)
    deficiency = sum(k for _, k in asym_pairs)
    if chi_curve != n - excess - deficiency:
        raise IllConditioned(
            f"Riemann-Hurwitz count fails: chi={chi_curve}, n={n}, excess={excess}, deficiency={deficiency}"
        )
    logger.info(
        f"oracle: rho={rho} n={n} chi(curve)={chi_curve}, "
        f"{len(ram_pairs)} critical and {len(asym_pairs)} asymptotic values"
    )
    return FiberTopologyEstimate(
        rho=rho,
        degree_n=n,
        chi_curve=chi_curve,
        ram_pairs=ram_pairs,
        asymptotic_pairs=asym_pairs,
        critical_polys=critical_polys,
        deficiency_polys=levels,
    )


def _separation(distances: Iterable, radius, th: OracleThresholds) -> float:
    floor = mp.mpf(10) ** (-th.dps // 2)
    inside = [d for d in distances if floor < d <= radius]
    outside = [d for d in distances if d > radius]
    if not inside or not outside:
        return math.inf
    ratio = float(min(outside) / max(inside))
    if ratio < th.separation_ratio:
        raise IllConditioned(f"values not separated at radius {mp.nstr(radius, 5)}: ratio {ratio:.3g}")
    return ratio


def _representative(place: Place) -> mp.mpc:
    if place.kind == RATIONAL:
        return mp.mpc(to_mpf(place.value))
    return numeric_roots(ComplexUPoly.from_poly(place.min_poly))[0]


def _exact_hits(polys: WeightedPolys, place: Place) -> int:
    """中心 ``place`` にちょうど乗る値の重み (穴あき円板からは除く)。"""
    count = 0
    for p, weight in polys:
        if place.kind == RATIONAL:
            hit = p.eval(place.value) == 0
        else:
            hit = p.rem(Poly(place.min_poly.as_expr(), S, domain=QQ)).is_zero
        count += weight * int(hit)
    return count


def chi_fiber(estimate: FiberTopologyEstimate, place: Place, th: OracleThresholds) -> int:
    """Euler characteristic of the part of g = rho over a punctured disc around ``place``."""
    with mp.workdps(th.dps):
        if estimate.dependent:
            if estimate.chi_curve % len(estimate.image_roots):
                raise IllConditioned("the level curve does not split into equal fibers")
            chi_generic = estimate.chi_curve // len(estimate.image_roots)
            if place.is_infinity:
                near = [r for r in estimate.image_roots if abs(r) > th.radius]
                estimate.confidence = min(estimate.confidence, _separation([abs(r) for r in estimate.image_roots], th.radius, th))
            else:
                c = _representative(place)
                near = [r for r in estimate.image_roots if abs(r - c) < th.delta]
                estimate.confidence = min(estimate.confidence, _separation([abs(r - c) for r in estimate.image_roots], th.delta, th))
            return chi_generic * len(near)

        pairs = estimate.pairs()
        if place.is_infinity:
            estimate.confidence = min(estimate.confidence, _separation([abs(v) for v, _ in pairs], th.radius, th))
            bounded = sum(w for v, w in pairs if abs(v) <= th.radius)
            return estimate.chi_curve - estimate.degree_n + bounded
        c = _representative(place)
        estimate.confidence = min(estimate.confidence, _separation([abs(v - c) for v, _ in pairs], th.delta, th))
        near = sum(w for v, w in pairs if abs(v - c) < th.delta)
        on_center = _exact_hits(estimate.critical_polys, place)
        on_center += _exact_hits([(level, 1) for level in estimate.deficiency_polys], place)
        return -(near - on_center)


def _one_sample(f: Poly, g: Poly, places: List[Place], th: OracleThresholds,
                stream: SampleStream, settings: Dict[str, Any]) -> Dict[Place, int]:
    retries = int(settings.get("oracle", {}).get("rho_retries", 4))
    last: Optional[Exception] = None
    for attempt in range(retries + 1):
        rho = sample_rho(th, stream)
        try:
            with mp.workdps(th.dps):
                estimate = fiber_data(f, g, rho, settings, stream)
                return {place: chi_fiber(estimate, place, th) for place in places}
        except (IllConditioned, NonConvergence) as exc:
            last = exc
            logger.info(f"oracle sample rho={rho} rejected ({exc}), resampling")
    raise IllConditioned(f"no well-conditioned rho after {retries + 1} attempts: {last}")


def cross_check(
    report: IrregularityReport,
    f: Poly,
    g: Poly,
    settings: Optional[Dict[str, Any]] = None,
    places: Optional[List[Place]] = None,
) -> List[OracleComparison]:
    """報告された有限点 (IR != 0) と無限遠でオラクル値を求め、記号計算の値と並べる。

    g が定数なら等位曲線は空なので突き合わせを行わず、空リストを返して notes に残す。
    """
    settings = settings or {}
    if is_constant(g):
        report.notes.append("oracle skipped: g is constant, so the level curves g = rho are empty")
        logger.info("oracle skipped for constant g")
        return []
    if places is None:
        places = [entry.place for entry in report.finite_places if entry.ir != 0] + [Place.infinity()]
    th = thresholds(f, g, settings)
    stream = SampleStream(seed=int(settings.get("sampling", {}).get("seed", 0)) + 1)
    samples = int(settings.get("oracle", {}).get("rho_samples", 3))
    results = [_one_sample(f, g, places, th, stream, settings) for _ in range(samples)]
    if any(r != results[0] for r in results[1:]):
        raise Instability(f"oracle values differ between rho samples: {results}")
    comparisons = [
        OracleComparison(place=place, chi=chi, ir=-chi, symbolic=report.ir_at(place))
        for place, chi in results[0].items()
    ]
    for item in comparisons:
        if not item.agrees:
            logger.warning(f"oracle disagrees at {item.place}: oracle {item.ir}, symbolic {item.symbolic}")
    return comparisons
