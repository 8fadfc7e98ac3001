"""有理数でないブローアップ中心のための数体。

チャートは ``QQ`` か sympy の ``AlgebraicField`` である体 ``K`` の上に置く。
不確定点が ``K`` 上 2 次以上の既約多項式の根になるときは、根をひとつ ``theta`` として
チャートを ``K(theta)`` 上に写す。残りの根はガロア共役なので、最後にノルムを取って数え上げる。
"""
from __future__ import annotations

import logging
from typing import List, Tuple

import mpmath as mp
from sympy import CRootOf, Poly, QQ
from sympy.polys.domains import Domain
from sympy.polys.polyerrors import CoercionFailed

from src.algebra.polynomials import TAU, canonical, format_poly
from src.errors import DegenerateParametrization

logger = logging.getLogger(__name__)


def is_rational_field(K: Domain) -> bool:
    return K == QQ


def field_degree(K: Domain) -> int:
    if is_rational_field(K):
        return 1
    return len(K.mod.to_list()) - 1


def field_label(K: Domain) -> str:
    """``QQ`` or ``QQ[a]/(m(a))`` with the minimal polynomial of the primitive element."""
    if is_rational_field(K):
        return "QQ"
    minpoly = Poly(K.mod.to_list(), TAU, domain=QQ)
    return f"QQ[a]/({format_poly(minpoly).replace('tau', 'a')})"


def numeric_value(K: Domain, c) -> complex:
    return complex(K.to_sympy(c).evalf(30))


def _numeric_residual(phi: Poly, z: complex) -> float:
    K = phi.get_domain()
    coeffs = [numeric_value(K, c) for c in phi.rep.to_list()]
    with mp.workdps(30):
        scale = max(abs(c) for c in coeffs) or 1.0
        return float(abs(mp.polyval(coeffs, mp.mpc(z))) / scale)


def _candidate_roots(phi: Poly) -> List[CRootOf]:
    """Roots over QQ of the norm of ``phi``, most plausible roots of ``phi`` first."""
    K = phi.get_domain()
    rational_poly = phi if is_rational_field(K) else phi.norm()
    rational_poly = canonical(Poly(rational_poly.as_expr(), TAU, domain=QQ))
    candidates = []
    for factor, _ in rational_poly.factor_list()[1]:
        if factor.degree() < 1:
            continue
        for index in range(int(factor.degree())):
            root = CRootOf(factor.as_expr(), TAU, index)
            if is_rational_field(K):
                candidates.append((0.0, root))
            else:
                candidates.append((_numeric_residual(phi, complex(root.evalf(30))), root))
    candidates.sort(key=lambda item: item[0])
    return [root for _, root in candidates]


def _horner(phi: Poly, theta, K2: Domain):
    acc = K2.zero
    for c in phi.rep.to_list():
        acc = acc * theta + c
    return acc


def extend_field(K: Domain, phi: Poly) -> Tuple[Domain, object]:
    """既約な ``phi`` (``K`` 上、変数 tau) の根を ``K`` に添加する。

    ``(K2, theta)`` を返す。``theta`` は ``K2`` の元で、``phi(theta) = 0`` が厳密に成り立つ。
    """
    for root in _candidate_roots(phi):
        try:
            K2 = QQ.algebraic_field(root) if is_rational_field(K) else K.algebraic_field(root)
            theta = K2.from_sympy(root)
            lifted = phi.set_domain(K2)
        except CoercionFailed as exc:
            logger.debug(f"field extension by {root} failed: {exc}")
            continue
        if not _horner(lifted, theta, K2):
            logger.info(f"extended {field_label(K)} to {field_label(K2)} (degree {field_degree(K2)})")
            return K2, theta
    raise DegenerateParametrization(f"no root of {phi.as_expr()} found in an extension of {field_label(K)}")


def norm_to_rationals(p: Poly) -> Poly:
    """数体上の多項式のノルム (QQ 上の多項式)。"""

    K = p.get_domain()
    if is_rational_field(K):
        return p
    return Poly(p.norm().as_expr(), *p.gens, domain=QQ)
