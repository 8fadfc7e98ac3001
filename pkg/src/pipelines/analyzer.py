"""f, g を受け取り、適用できるパイプラインを選んで IR プロファイルを返す。"""
import logging
from typing import Any, Dict, Optional, Tuple

from sympy import Poly

from src.algebra.places import Place
from src.algebra.polynomials import is_constant
from src.analysis.discriminant_cycle import dependence_test, jacobian
from src.analysis.report import IrregularityReport
from src.errors import DegenerateInputError
from src.pipelines.base_pipeline import BasePipeline
from src.pipelines.dependent_pipeline import DependentPipeline
from src.pipelines.independent_pipeline import IndependentPipeline

logger = logging.getLogger(__name__)

PIPELINES = (IndependentPipeline, DependentPipeline)


def select_pipeline(f: Poly, g: Poly, settings: Dict[str, Any]) -> BasePipeline:
    if is_constant(f):
        raise DegenerateInputError("f is constant: the direct image along f is not defined")
    J = jacobian(f, g)
    state = "== 0" if dependence_test(J) else f"of degree {J.degree}"
    logger.info(f"dependence test: J {state}")
    for cls in PIPELINES:
        pipeline = cls(settings)
        if pipeline.is_applicable(J):
            return pipeline
    raise DegenerateInputError("no pipeline applies to this pair")


def analyze(f: Poly, g: Poly, settings: Dict[str, Any], at: Optional[Place] = None) -> Tuple[IrregularityReport, BasePipeline]:
    pipeline = select_pipeline(f, g, settings)
    return pipeline.run(f, g, at), pipeline
