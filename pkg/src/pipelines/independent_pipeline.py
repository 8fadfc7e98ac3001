import logging
from typing import Any, Dict, Optional

from sympy import Poly

from src.algebra.places import Place
from src.analysis.compactification import (
    CURVE,
    DEFAULT_BLOWUP_BUDGET,
    JOINT,
    Resolution,
    irregularity_at_infinity,
    resolve,
)
from src.analysis.discriminant_cycle import (
    JacobianPoly,
    PushforwardPoly,
    irregularity_finite,
    jacobian,
    profile_finite,
    pushforward_polynomial,
)
from src.analysis.report import IrregularityReport
from src.pipelines.base_pipeline import BasePipeline

logger = logging.getLogger(__name__)


class IndependentPipeline(BasePipeline):
    """
    J ≠ 0 の場合: アフィン判別式 R(s, t) と無限遠の解消から IR を求める
    """

    def __init__(self, settings: Dict[str, Any]):
        super().__init__(settings)
        self.pushforward: Optional[PushforwardPoly] = None
        self.resolution: Optional[Resolution] = None

    def is_applicable(self, J: JacobianPoly) -> bool:
        return not J.is_zero

    def _resolve(self, f: Poly, g: Poly) -> Resolution:
        options = self.settings.get("compactification", {})
        return resolve(
            f,
            g,
            scope=options.get("scope", JOINT),
            budget=int(options.get("blowup_budget", DEFAULT_BLOWUP_BUDGET)),
        )

    def _collect_notes(self) -> None:
        inert = len(self.resolution.inert_points)
        if inert:
            self.notes.append(f"{inert} indeterminacy point(s) of only one of F, G left unresolved")
        discarded = [c for c in self.resolution.components if c.kind != CURVE]
        if discarded:
            kinds = sorted({c.kind for c in discarded})
            self.notes.append(f"{len(discarded)} boundary component(s) without image curve ({', '.join(kinds)})")
        if self.pushforward.bound_used and self.pushforward.bound_used < self.pushforward.deg_bounds[1]:
            self.notes.append(
                f"interpolation bound {self.pushforward.bound_used} (Bezout {self.pushforward.deg_bounds[1]})"
            )

    def run(self, f: Poly, g: Poly, at: Optional[Place] = None) -> IrregularityReport:
        J = jacobian(f, g)
        self.pushforward = pushforward_polynomial(f, g, J, self.settings)
        self.resolution = self._resolve(f, g)
        places = profile_finite(self.pushforward)
        places.append(irregularity_at_infinity(f, g, self.pushforward, self.settings, self.resolution))
        report = IrregularityReport(places=places, dependent=False, notes=self.notes)
        if at is not None and not at.is_infinity and report.entry(at) is None:
            report.places.append(irregularity_finite(f, g, at, self.pushforward, self.settings))
        self._collect_notes()
        nonzero = len([p for p in places if p.ir and not p.place.is_infinity])
        logger.info(f"independent pair: {nonzero} finite place(s) with nonzero IR")
        return report

    def dump(self) -> Optional[Dict[str, Any]]:
        if self.resolution is None:
            return None
        payload = self.resolution.to_dict()
        payload["R"] = str(self.pushforward.R.as_expr()) if self.pushforward else None
        return payload
