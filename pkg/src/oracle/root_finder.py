"""mpmath.polyroots による 1 変数複素多項式の求根。"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Sequence

import mpmath as mp
from mpmath.libmp import NoConvergence
from sympy import Poly, Rational

from src.errors import NonConvergence

logger = logging.getLogger(__name__)


def to_mpf(value: Rational) -> mp.mpf:
    value = Rational(value)
    return mp.mpf(int(value.p)) / int(value.q)


@dataclass(frozen=True)
class ComplexUPoly:
    """Dense coefficients, highest degree first."""

    coefficients: tuple

    @classmethod
    def from_poly(cls, p: Poly) -> "ComplexUPoly":
        return cls(tuple(to_mpf(c) for c in p.all_coeffs()))

    @classmethod
    def from_values(cls, values: Sequence) -> "ComplexUPoly":
        coeffs = list(values)
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
        return cls(tuple(mp.mpmathify(c) for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, z):
        return mp.polyval(list(self.coefficients), z)


def numeric_roots(p: ComplexUPoly, max_steps: int = 400, extra_precision: int = 60) -> List[mp.mpc]:
    """``p`` の複素根をすべて返す (mpmath の作業精度)。収束しなければ NonConvergence。"""
    if p.degree < 1:
        return []
    if p.degree == 1:
        a, b = p.coefficients
        return [mp.mpc(-b / a)]
    try:
        roots, err = mp.polyroots(
            list(p.coefficients), maxsteps=max_steps, extraprec=extra_precision, error=True
        )
    except NoConvergence as exc:
        raise NonConvergence(f"polyroots did not converge for a degree {p.degree} polynomial") from exc
    scale = max([mp.mpf(1)] + [abs(r) for r in roots])
    tolerance = mp.mpf(10) ** (-mp.mp.dps // 2) * scale
    if err > tolerance:
        raise NonConvergence(f"root error estimate {mp.nstr(err, 5)} above {mp.nstr(tolerance, 3)}")
    logger.debug(f"polyroots: degree {p.degree}, error {mp.nstr(err, 5)}")
    return [mp.mpc(r) for r in roots]
