"""零次元イデアルの商環 QQ[x, y]/I と掛け算写像の特性多項式。

固有値は V(I) の各点での値で、局所重複度つきで現れる。
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from sympy import Poly, QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.monomials import monomial_divides
from sympy.polys.rings import PolyElement

from src.algebra.groebner import GroebnerBasis
from src.algebra.polynomials import S, X, Y, as_poly
from src.errors import NotZeroDimensional

logger = logging.getLogger(__name__)

Monomial = Tuple[int, int]


@dataclass
class QuotientAlgebra:
    gb: GroebnerBasis
    basis: List[Monomial]
    mult_matrices: Dict[str, DomainMatrix] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def index(self) -> Dict[Monomial, int]:
        return {m: k for k, m in enumerate(self.basis)}

    def coordinates(self, p: PolyElement) -> List:
        """Coordinates of the normal form of ``p`` on the staircase basis."""
        nf = self.gb.reduce(p)
        index = self.index
        column = [QQ.zero] * self.dim
        for monom, coeff in nf.iterterms():
            column[index[monom]] = coeff
        return column

    def matrix_of(self, p: Poly) -> DomainMatrix:
        """Matrix of multiplication by ``p`` (column k = image of basis monomial k)."""
        R = self.gb.ring
        element = R.from_dict(as_poly(p).as_dict())
        columns = [self.coordinates(element.mul_monom(m)) for m in self.basis]
        rows = [[columns[j][i] for j in range(self.dim)] for i in range(self.dim)]
        return DomainMatrix(rows, (self.dim, self.dim), QQ)


def _staircase(gb: GroebnerBasis) -> List[Monomial]:
    lms = gb.leading_monomials
    pure_x = [m[0] for m in lms if m[1] == 0 and m[0] > 0]
    pure_y = [m[1] for m in lms if m[0] == 0 and m[1] > 0]
    if gb.is_unit_ideal:
        return []
    if not pure_x or not pure_y:
        raise NotZeroDimensional("staircase is infinite: ideal is not zero-dimensional")
    a, b = min(pure_x), min(pure_y)
    stairs = [
        (i, j)
        for i in range(a)
        for j in range(b)
        if not any(monomial_divides(lm, (i, j)) for lm in lms)
    ]
    return sorted(stairs, key=lambda m: gb.ring.order(m))


def quotient_algebra(gb: GroebnerBasis) -> QuotientAlgebra:
    algebra = QuotientAlgebra(gb=gb, basis=_staircase(gb))
    if algebra.dim:
        algebra.mult_matrices = {"x": algebra.matrix_of(as_poly(X)), "y": algebra.matrix_of(as_poly(Y))}
    logger.debug(f"quotient algebra of dimension {algebra.dim}")
    return algebra


def charpoly_of(algebra: QuotientAlgebra, p: Poly) -> Poly:
    """``p`` 倍写像の特性多項式 (s の多項式、モニック、次数 dim)。"""

    if algebra.dim == 0:
        return Poly(1, S, domain=QQ)
    coeffs = algebra.matrix_of(p).charpoly()
    return Poly([QQ.to_sympy(c) for c in coeffs], S, domain=QQ)
