"""irrcalc の例外階層。

CLI は各例外の exit_code をそのまま終了コードに使う。
サンプリング系の例外 (BadSample など) は乱数生成器を持つ呼び出し側で捕捉して再試行する。
"""
from typing import Optional


class IrrcalcError(RuntimeError):
    """irrcalc が送出する例外の基底クラス。"""

    exit_code = 1


class ParseError(IrrcalcError):
    """多項式の式文字列が文法に合わない。"""

    exit_code = 2

    def __init__(self, message: str, text: str = "", position: Optional[int] = None):
        self.text = text
        self.position = position
        if position is not None and text:
            message = f"{message} at position {position}\n  {text}\n  {' ' * position}^"
        super().__init__(message)


class CorpusFormatError(IrrcalcError):
    """コーパスファイルの行が JSON として読めない、または必須キーが欠けている。"""

    exit_code = 2


class DegenerateInputError(IrrcalcError):
    """f が定数など、解析の前提を満たさない入力。"""

    exit_code = 3


class ResourceLimitError(IrrcalcError):
    """設定された計算予算を使い切った。"""

    exit_code = 4


class PairBudgetExceeded(ResourceLimitError):
    """Buchberger の臨界対の処理数が上限を超えた。"""


class DepthExceeded(ResourceLimitError):
    """ブローアップ回数が上限を超えた。"""


class OracleDisagreement(IrrcalcError):
    """--strict 指定時、数値オラクルと記号計算の値が一致しない。"""

    exit_code = 5


class BadSample(IrrcalcError):
    """サンプル値が非一般的 (共通成分を持つ、次数が落ちる等)。再サンプルで回復する。"""


class NotZeroDimensional(BadSample):
    """イデアルが零次元でない (ステアケースが有限でない)。"""


class ValidationFailure(IrrcalcError):
    """補間で再構成した多項式が新しいサンプルで検証に失敗した。"""


class EliminationFailure(IrrcalcError):
    """消去で得た像曲線がサンプル点で消えない。"""


class Instability(IrrcalcError):
    """サンプル間で値が揃わない。"""


class DegenerateParametrization(IrrcalcError):
    """境界成分への制限が 0/0 になった (チャート計算の不整合)。"""


class NonConvergence(IrrcalcError):
    """数値求根が反復上限までに収束しなかった。"""


class IllConditioned(IrrcalcError):
    """オラクルの数値データが閾値で十分に分離されていない。ρ を取り直す。"""
