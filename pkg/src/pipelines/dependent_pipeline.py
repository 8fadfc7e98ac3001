import logging
from typing import Any, Dict, Optional

from sympy import Poly

from src.algebra.places import Place
from src.algebra.polynomials import format_poly, is_constant
from src.analysis.dependent_case import (
    GenericFiberChi,
    ImageCurve,
    chi_generic_fiber,
    image_curve,
    irregularity_dependent,
    profile_dependent,
)
from src.analysis.discriminant_cycle import JacobianPoly
from src.analysis.report import IrregularityReport
from src.pipelines.base_pipeline import BasePipeline
from src.utils.sampling import SampleStream

logger = logging.getLogger(__name__)


class DependentPipeline(BasePipeline):
    """
    J ≡ 0 の場合: 像曲線 W と一般ファイバーのオイラー標数から IR を求める
    """

    def __init__(self, settings: Dict[str, Any]):
        super().__init__(settings)
        self.curve: Optional[ImageCurve] = None
        self.chi: Optional[GenericFiberChi] = None

    def is_applicable(self, J: JacobianPoly) -> bool:
        return J.is_zero

    def run(self, f: Poly, g: Poly, at: Optional[Place] = None) -> IrregularityReport:
        if is_constant(g):
            self.notes.append("g is constant: untwisted Gauss-Manin system, every IR vanishes")
        stream = SampleStream(seed=int(self.settings.get("sampling", {}).get("seed", 0)))
        self.curve = image_curve(f, g, self.settings, stream)
        self.chi = chi_generic_fiber(f, g, self.settings, stream)
        places = profile_dependent(self.curve, self.chi)
        report = IrregularityReport(places=places, dependent=True, chiF=self.chi.value, notes=self.notes)
        if at is not None and report.entry(at) is None:
            report.places.append(irregularity_dependent(f, g, at, self.chi, self.curve, self.settings))
        logger.info(f"dependent pair: W = {format_poly(self.curve.W)}, chi(F) = {self.chi.value}")
        return report

    def dump(self) -> Optional[Dict[str, Any]]:
        if self.curve is None:
            return None
        return {"W": format_poly(self.curve.W), "chiF": self.chi.value if self.chi else None}
