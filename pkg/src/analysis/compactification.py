"""無限遠での IR への境界成分の寄与。

(F, G) = (f, g) を有理写像 P^2 --> P^1 x P^1 とみる。不確定点は無限遠直線とその上の
例外曲線にあり、点のブローアップで取り除く。ブローアップごとにチャートを 2 枚作る:

* main:   (u, v) -> (u, v0 + u*v)。新しい曲線は u = 0 で、チャートから欠けるのは v = inf の 1 点だけ
* corner: (u, v) -> (u*v, v0 + u)。その欠けた点 (原点) だけを調べる

各チャートでは F, G と (x, y) -> (F, G) のヤコビ行列式を、チャートの体上の既約分数で持つ。
F, G の像がともに定数でない境界曲線は P^1 x P^1 の曲線に写り、s = inf での像の芽を通して
無限遠の IR に寄与する。
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Deque, Dict, Iterator, List, Optional, Tuple

from sympy import Expr, Poly, QQ, cancel
from sympy.polys.domains import Domain
from sympy.polys.fields import FracElement, FracField

from src.algebra.number_fields import extend_field, field_degree, field_label, norm_to_rationals
from src.algebra.places import Place
from src.algebra.polynomials import (
    S,
    T,
    TAU,
    U,
    V,
    X,
    Y,
    canonical,
    degree_in,
    format_poly,
    leading_coeff_in,
    primitive_part_in,
)
from src.analysis.discriminant_cycle import JacobianPoly, PushforwardPoly, jacobian, pushforward_polynomial
from src.analysis.report import AFFINE_DELTA1, BOUNDARY_DELTA1, DELTA2, GermContribution, PlaceEntry
from src.errors import DegenerateParametrization, DepthExceeded

logger = logging.getLogger(__name__)

MAIN = "main"
CORNER = "corner"

JOINT = "joint"
FULL = "full"

CURVE = "curve"
POINT = "point"
VERTICAL = "vertical"
HORIZONTAL = "horizontal"
BOUNDARY = "boundary"

DEFAULT_BLOWUP_BUDGET = 64


@lru_cache(maxsize=None)
def chart_field(K: Domain) -> FracField:
    return FracField((U, V), K)


@dataclass
class Chart:
    """P^2 のブローアップのアフィンチャート (u, v)。体 ``domain`` 上。"""

    id: str
    role: str
    domain: Domain
    F: FracElement
    G: FracElement
    jacobian: FracElement
    to_affine: Tuple[Expr, Expr]
    from_affine: Tuple[Expr, Expr]
    history: List[str] = field(default_factory=list)
    component_id: Optional[str] = None

    def check_inverse(self) -> bool:
        """from_affine composed with to_affine is the identity of (u, v)."""
        x_expr, y_expr = self.to_affine
        back = [cancel(e.subs({X: x_expr, Y: y_expr}, simultaneous=True)) for e in self.from_affine]
        return cancel(back[0] - U) == 0 and cancel(back[1] - V) == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "role": self.role,
            "field": field_label(self.domain),
            "x": str(self.to_affine[0]),
            "y": str(self.to_affine[1]),
            "history": list(self.history),
            "component": self.component_id,
        }


@dataclass
class BoundaryComponent:
    """main チャートの曲線 u = 0。

    ``F_restricted`` は F|Z = p(tau)/q(tau) となる ``(p, q)``。``q == 0`` は Z 上で F が
    恒等的に無限大であることを表し、そのとき ``pole_F`` が Z に沿った極の位数。
    """

    id: str
    chart_id: str
    domain: Domain
    F_restricted: Tuple[Poly, Poly]
    G_restricted: Tuple[Poly, Poly]
    pole_F: int
    pole_G: int
    jacobian_order: int
    crit_mult: int = 0
    kind: str = POINT
    image: Optional[Poly] = None

    @property
    def orbit_size(self) -> int:
        return field_degree(self.domain)

    @property
    def relevant(self) -> bool:
        return self.kind == CURVE

    def to_dict(self) -> Dict[str, Any]:
        def fmt(pq: Tuple[Poly, Poly]) -> str:
            p, q = pq
            if q.is_zero:
                return "inf"
            return f"({p.as_expr()})/({q.as_expr()})"

        return {
            "id": self.id,
            "chart": self.chart_id,
            "field": field_label(self.domain),
            "orbit_size": self.orbit_size,
            "F": fmt(self.F_restricted),
            "G": fmt(self.G_restricted),
            "pole_F": self.pole_F,
            "pole_G": self.pole_G,
            "jacobian_order": self.jacobian_order,
            "crit_mult": self.crit_mult,
            "kind": self.kind,
            "image": format_poly(self.image) if self.image is not None else None,
        }


@dataclass
class InertPoint:
    """F, G の片方だけの不確定点。joint スコープでは解消せずに残す。"""

    chart_id: str
    locus: str
    map_name: str

    def to_dict(self) -> Dict[str, Any]:
        return {"chart": self.chart_id, "locus": self.locus, "map": self.map_name}


@dataclass
class Resolution:
    scope: str
    charts: List[Chart] = field(default_factory=list)
    components: List[BoundaryComponent] = field(default_factory=list)
    inert_points: List[InertPoint] = field(default_factory=list)
    blowups: int = 0

    def __iter__(self) -> Iterator:
        return iter((self.charts, self.components))

    def component(self, component_id: str) -> BoundaryComponent:
        for item in self.components:
            if item.id == component_id:
                return item
        raise KeyError(component_id)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "scope": self.scope,
            "blowups": self.blowups,
            "charts": [c.to_dict() for c in self.charts],
            "components": [c.to_dict() for c in self.components],
            "inert_points": [p.to_dict() for p in self.inert_points],
        }


def _u_order(p) -> int:
    return min(monom[0] for monom in p.itermonoms())


def _u_slice(p, k: int, K: Domain) -> Poly:
    """Coefficient of u^k of a (u, v)-polynomial, as a polynomial in tau."""
    terms = {(monom[1],): coeff for monom, coeff in p.iterterms() if monom[0] == k}
    return Poly.from_dict(terms or {(0,): K.zero}, TAU, domain=K)


def _restrict(fe: FracElement, K: Domain) -> Tuple[Poly, Poly, int]:
    """分数の u = 0 への制限 ``(p, q, pole)``。"""
    one = Poly(1, TAU, domain=K)
    zero = Poly(0, TAU, domain=K)
    if not fe.numer:
        return zero, one, 0
    a, b = _u_order(fe.numer), _u_order(fe.denom)
    if a > b:
        return zero, one, 0
    if a < b:
        return one, zero, b - a
    p, q = _u_slice(fe.numer, a, K), _u_slice(fe.denom, b, K)
    common = p.gcd(q)
    p, q = p.exquo(common), q.exquo(common)
    lc = q.LC()
    return p.quo_ground(lc), q.monic(), 0


def _is_constant(pq: Tuple[Poly, Poly]) -> bool:
    p, q = pq
    return q.is_zero or (p.degree() <= 0 and q.degree() <= 0)


def _is_infinite(pq: Tuple[Poly, Poly]) -> bool:
    return pq[1].is_zero


def _boundary_trace(fe: FracElement, K: Domain) -> Poly:
    """u = 0 上で分子・分母がともに消える点 (tau の多項式)。"""
    n0, d0 = _u_slice(fe.numer, 0, K), _u_slice(fe.denom, 0, K)
    if n0.is_zero and d0.is_zero:
        raise DegenerateParametrization("fraction with numerator and denominator both divisible by u")
    return n0.gcd(d0)


def _indeterminate_at_origin(fe: FracElement) -> bool:
    origin = (0, 0)
    return not fe.numer.get(origin) and not fe.denom.get(origin)


def _irreducible_factors(p: Poly) -> List[Poly]:
    if p.is_zero or p.degree() < 1:
        return []
    return [factor.monic() for factor, _ in p.factor_list()[1] if factor.degree() >= 1]


def criticality_order(component: BoundaryComponent) -> int:
    """像側の座標で読んだ (F, G) の臨界因子における Z の重複度。

    ヤコビ行列式の ord_Z に、Z に沿った F, G の極の位数ごとに 2 を足す (d(1/F) = -dF / F^2)。
    """
    return component.jacobian_order + 2 * component.pole_F + 2 * component.pole_G


def image_cycle(component: BoundaryComponent) -> Optional[Poly]:
    """Z の押し出しを QQ 上の多項式 W(s, t) で返す。像が曲線でなければ None。

    数体上の成分はノルムを取り、Z のガロア軌道全体をまとめる。
    """
    if not component.relevant:
        return None
    K = component.domain
    (p1, q1), (p2, q2) = component.F_restricted, component.G_restricted

    def lifted(p: Poly, q: Poly, slot: int) -> Poly:
        terms: Dict[Tuple[int, int, int], Any] = {}
        for (i,), c in p.as_dict(native=True).items():
            terms[(i, 0, 0)] = c
        for (i,), c in q.as_dict(native=True).items():
            monom = (i, 1, 0) if slot == 0 else (i, 0, 1)
            terms[monom] = K.neg(c)
        return Poly.from_dict(terms, TAU, S, T, domain=K)

    res = lifted(p1, q1, 0).resultant(lifted(p2, q2, 1))
    res = norm_to_rationals(Poly(res, S, T, domain=K) if not isinstance(res, Poly) else res)
    W = Poly(res.as_expr(), S, T, domain=QQ)
    if W.is_zero:
        raise DegenerateParametrization(f"vanishing resultant on component {component.id}")
    # lines s = c and t = c come from tau = inf, not from the image curve
    W = primitive_part_in(W, T)
    W = primitive_part_in(W, S)
    return canonical(W)


def germ_at_infinity(W: Poly, mult: int = 1) -> int:
    """W(s, t) = 0 のうち t とともに s = inf へ逃げる分枝の数 (mult 倍)。"""
    if W is None or W.is_zero:
        return 0
    W = primitive_part_in(Poly(W.as_expr(), S, T, domain=QQ), T)
    if degree_in(W, T) == 0:
        return 0
    lc = leading_coeff_in(W, T)
    return mult * (degree_in(W, S) - degree_in(Poly(lc.as_expr(), S, domain=QQ), S))


class _Resolver:
    def __init__(self, f: Poly, g: Poly, scope: str, budget: int):
        if scope not in (JOINT, FULL):
            raise ValueError(f"unknown resolution scope: {scope}")
        self.f, self.g = f, g
        self.scope = scope
        self.budget = budget
        self.resolution = Resolution(scope=scope)
        self.queue: Deque[Chart] = deque()

    # -- charts ---------------------------------------------------------------

    def _initial_chart(self, chart_id: str, x_expr, y_expr, det, from_affine) -> Chart:
        Fr = chart_field(QQ)
        J = jacobian(self.f, self.g).J

        def pulled(p: Poly):
            return Fr.from_expr(p.as_expr().subs({X: x_expr, Y: y_expr}, simultaneous=True))

        return Chart(
            id=chart_id,
            role=MAIN if chart_id == "A" else CORNER,
            domain=QQ,
            F=pulled(self.f),
            G=pulled(self.g),
            jacobian=pulled(J) * Fr.from_expr(det),
            to_affine=(x_expr, y_expr),
            from_affine=from_affine,
        )

    def _initial_charts(self) -> List[Chart]:
        chart_a = self._initial_chart("A", 1 / U, V / U, -1 / U ** 3, (1 / X, Y / X))
        chart_b = self._initial_chart("B", V / U, 1 / U, 1 / U ** 3, (1 / Y, X / Y))
        return [chart_a, chart_b]

    def _over(self, chart: Chart, K2: Domain) -> Chart:
        Fr2 = chart_field(K2)

        def lift(fe: FracElement) -> FracElement:
            return Fr2.raw_new(fe.numer.set_ring(Fr2.ring), fe.denom.set_ring(Fr2.ring))

        return Chart(
            id=chart.id,
            role=chart.role,
            domain=K2,
            F=lift(chart.F),
            G=lift(chart.G),
            jacobian=lift(chart.jacobian),
            to_affine=chart.to_affine,
            from_affine=chart.from_affine,
            history=list(chart.history),
            component_id=chart.component_id,
        )

    def _blow_up(self, chart: Chart, v0) -> Tuple[Chart, Chart]:
        self.resolution.blowups += 1
        if self.resolution.blowups > self.budget:
            raise DepthExceeded(f"more than {self.budget} blow-ups needed to resolve (F, G)")
        K = chart.domain
        Fr = chart_field(K)
        u, v = Fr.ring.gens
        c = Fr.ring.ground_new(v0)
        v0_expr = K.to_sympy(v0)
        index = self.resolution.blowups
        x_expr, y_expr = chart.to_affine
        u_old, v_old = chart.from_affine

        def moved(fe: FracElement, mapping) -> FracElement:
            return Fr.new(fe.numer.compose(mapping), fe.denom.compose(mapping))

        children = []
        for role, mapping, det, (u_sub, v_sub), inverse in (
            (MAIN, [(u, u), (v, c + u * v)], u, (U, v0_expr + U * V), (u_old, (v_old - v0_expr) / u_old)),
            (CORNER, [(u, u * v), (v, c + u)], -u, (U * V, v0_expr + U), (v_old - v0_expr, u_old / (v_old - v0_expr))),
        ):
            substitution = {U: u_sub, V: v_sub}
            child = Chart(
                id=f"{chart.id}.{index}{'m' if role == MAIN else 'c'}",
                role=role,
                domain=K,
                F=moved(chart.F, mapping),
                G=moved(chart.G, mapping),
                jacobian=moved(chart.jacobian, mapping) * Fr.new(det),
                to_affine=(
                    x_expr.subs(substitution, simultaneous=True),
                    y_expr.subs(substitution, simultaneous=True),
                ),
                from_affine=inverse,
                history=chart.history + [f"blow-up of {chart.id} at v = {v0_expr}"],
            )
            children.append(child)
        logger.debug(f"blow-up #{index} of chart {chart.id} at v = {v0_expr} over {field_label(K)}")
        return children[0], children[1]

    # -- components -----------------------------------------------------------

    def _component(self, chart: Chart, component_id: str) -> BoundaryComponent:
        K = chart.domain
        pF, qF, pole_F = _restrict(chart.F, K)
        pG, qG, pole_G = _restrict(chart.G, K)
        jac = chart.jacobian
        jacobian_order = _u_order(jac.numer) - _u_order(jac.denom)
        component = BoundaryComponent(
            id=component_id,
            chart_id=chart.id,
            domain=K,
            F_restricted=(pF, qF),
            G_restricted=(pG, qG),
            pole_F=pole_F,
            pole_G=pole_G,
            jacobian_order=jacobian_order,
        )
        component.crit_mult = criticality_order(component)
        if component.crit_mult < 0:
            raise DegenerateParametrization(f"negative critical multiplicity on component {component_id}")
        f_const, g_const = _is_constant(component.F_restricted), _is_constant(component.G_restricted)
        if f_const and g_const:
            component.kind = POINT
        elif not f_const and not g_const:
            component.kind = CURVE
        elif _is_infinite(component.F_restricted) or _is_infinite(component.G_restricted):
            component.kind = BOUNDARY
        else:
            component.kind = VERTICAL if f_const else HORIZONTAL
        if component.relevant:
            component.image = image_cycle(component)
        chart.component_id = component_id
        self.resolution.components.append(component)
        return component

    # -- indeterminacy --------------------------------------------------------

    def _record_inert(self, chart: Chart, locus: str, map_name: str) -> None:
        self.resolution.inert_points.append(InertPoint(chart_id=chart.id, locus=locus, map_name=map_name))

    def _line_centers(self, chart: Chart) -> List[Tuple[Chart, Any]]:
        K = chart.domain
        trace_f = _boundary_trace(chart.F, K)
        trace_g = _boundary_trace(chart.G, K)
        target = trace_f.gcd(trace_g) if self.scope == JOINT else trace_f.lcm(trace_g)
        for name, trace in (("F", trace_f), ("G", trace_g)):
            for factor in _irreducible_factors(trace):
                if not target.rem(factor).is_zero:
                    self._record_inert(chart, f"u = 0, {factor.as_expr()} = 0", name)
        centers: List[Tuple[Chart, Any]] = []
        for factor in _irreducible_factors(target):
            if factor.degree() == 1:
                a, b = factor.rep.to_list()
                centers.append((chart, K.quo(K.neg(b), a)))
            else:
                K2, theta = extend_field(K, factor)
                centers.append((self._over(chart, K2), theta))
        return centers

    def _origin_centers(self, chart: Chart) -> List[Tuple[Chart, Any]]:
        f_ind, g_ind = _indeterminate_at_origin(chart.F), _indeterminate_at_origin(chart.G)
        if f_ind and g_ind or (self.scope == FULL and (f_ind or g_ind)):
            return [(chart, chart.domain.zero)]
        if f_ind or g_ind:
            self._record_inert(chart, "origin", "F" if f_ind else "G")
        return []

    def run(self) -> Resolution:
        charts = self._initial_charts()
        self._component(charts[0], "L")
        self.queue.extend(charts)
        count = 0
        while self.queue:
            chart = self.queue.popleft()
            self.resolution.charts.append(chart)
            centers = self._line_centers(chart) if chart.role == MAIN else self._origin_centers(chart)
            for parent, v0 in centers:
                main, corner = self._blow_up(parent, v0)
                count += 1
                self._component(main, f"E{count}")
                self.queue.extend([main, corner])
        logger.info(
            f"resolution ({self.scope}): {self.resolution.blowups} blow-ups, "
            f"{len(self.resolution.components)} components, {len(self.resolution.inert_points)} inert points"
        )
        return self.resolution


def resolve(f: Poly, g: Poly, scope: str = FULL, budget: int = DEFAULT_BLOWUP_BUDGET) -> Resolution:
    """無限遠直線上での (F, G) の解消 (チャートと境界成分)。

    ``scope="joint"`` は F, G がともに不確定な点だけをブローアップする。
    ブローアップ回数が ``budget`` を超えたら DepthExceeded。
    """

    return _Resolver(f, g, scope, budget).run()


def irregularity_at_infinity(
    f: Poly,
    g: Poly,
    R: Optional[PushforwardPoly] = None,
    settings: Optional[Dict[str, Any]] = None,
    resolution: Optional[Resolution] = None,
) -> PlaceEntry:
    settings = settings or {}
    options = settings.get("compactification", {})
    J: JacobianPoly = jacobian(f, g)
    if R is None:
        R = pushforward_polynomial(f, g, J, settings)
    if resolution is None:
        resolution = resolve(
            f,
            g,
            scope=options.get("scope", JOINT),
            budget=int(options.get("blowup_budget", DEFAULT_BLOWUP_BUDGET)),
        )

    affine = germ_at_infinity(primitive_part_in(R.R, T)) if not R.R.is_zero else 0
    contributions = [GermContribution(source=AFFINE_DELTA1, component_id="affine", value=affine)]
    boundary = 0
    delta2 = 0
    for component in resolution.components:
        if not component.relevant:
            continue
        germ = germ_at_infinity(component.image)
        delta2 += germ
        contributions.append(GermContribution(source=DELTA2, component_id=component.id, value=germ))
        if component.crit_mult > 0:
            weighted = component.crit_mult * germ
            boundary += weighted
            contributions.append(GermContribution(source=BOUNDARY_DELTA1, component_id=component.id, value=weighted))
    entry = PlaceEntry(
        place=Place.infinity(),
        ir=affine + boundary + delta2,
        delta1=affine + boundary,
        delta2=delta2,
        delta1_affine=affine,
        delta1_boundary=boundary,
        contributions=[c for c in contributions if c.value != 0 or c.source == AFFINE_DELTA1],
    )
    logger.info(f"IR[inf] = {entry.ir} (affine {affine}, boundary {boundary}, delta2 {delta2})")
    return entry
