from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional

from sympy import Poly

from src.algebra.places import Place
from src.analysis.discriminant_cycle import JacobianPoly
from src.analysis.report import IrregularityReport


class BasePipeline(ABC):
    """
    (f, g) の IR プロファイルを計算するパイプラインの抽象基底クラス
    """

    def __init__(self, settings: Dict[str, Any]):
        self.settings = settings
        self.notes: List[str] = []

    @abstractmethod
    def is_applicable(self, J: JacobianPoly) -> bool:
        """
        このパイプラインで (f, g) を扱えるかどうかを判定する

        Args:
            J: f, g のヤコビアン

        Returns:
            bool: 扱えれば True
        """
        pass

    @abstractmethod
    def run(self, f: Poly, g: Poly, at: Optional[Place] = None) -> IrregularityReport:
        """
        IR プロファイルを計算する

        Args:
            f, g: QQ[x, y] の多項式
            at: 指定があれば、IR が 0 でもこの点をレポートに含める

        Returns:
            IrregularityReport: 0 でない有限点と無限遠点のエントリ
        """
        pass

    def dump(self) -> Optional[Dict[str, Any]]:
        """--dump-resolution 用の中間データ。持たないパイプラインは None。"""
        return None
