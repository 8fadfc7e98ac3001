"""設定ファイル (settings.yaml) と環境変数を統合して返すユーティリティ。

優先順位 (後勝ち):
  1. DEFAULT_SETTINGS  : コード内の既定値
  2. config/settings.yaml  : ベース設定（Git 管理対象）
  3. 環境変数 IRRCALC_*  : CI / 一時的な上書き

三者を再帰的にディープマージする。CLI フラグはさらに呼び出し側で上書きする。
"""
import logging
import os
from pathlib import Path
from typing import Any, Dict

import yaml

logger = logging.getLogger(__name__)

_SETTINGS_PATH = Path("config/settings.yaml")

DEFAULT_SETTINGS: Dict[str, Any] = {
    "sampling": {
        "seed": 0,
        "t_min": 1000,
        "t_max": 1000000,
        "bad_sample_retries": 20,
        "validation_samples": 3,
    },
    "groebner": {"order": "grevlex", "pair_budget": 20000},
    "interpolation": {"escalation_factor": 2},
    "compactification": {"blowup_budget": 64, "scope": "joint"},
    "dependent": {"sample_points": 25, "concordant_required": 5, "image_checks": 20},
    "oracle": {
        "rho_exponent_per_degree": 6,
        "rho_samples": 3,
        "separation_ratio": 1000,
        "max_steps": 400,
        "extra_precision": 60,
        "rho_retries": 4,
        "rho_log10": None,
    },
    "report": {"schema_version": 1},
    "logging": {"level": "INFO", "format": "%(asctime)s %(levelname)s %(message)s"},
}

# 環境変数名 -> (セクション, キー, 型)
_ENV_MAP = {
    "IRRCALC_SEED": ("sampling", "seed", int),
    "IRRCALC_PAIR_BUDGET": ("groebner", "pair_budget", int),
    "IRRCALC_BLOWUP_BUDGET": ("compactification", "blowup_budget", int),
    "IRRCALC_ORACLE_RHO_MAG": ("oracle", "rho_log10", float),
    "IRRCALC_LOG_LEVEL": ("logging", "level", str),
}


def _deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    """base に override を再帰的にマージしたコピーを返す。override 側が優先。"""
    merged = dict(base)
    for key, value in override.items():
        if key in merged and isinstance(merged[key], dict) and isinstance(value, dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def _load_yaml_settings(path: Path = _SETTINGS_PATH) -> Dict[str, Any]:
    """settings.yaml を読み込む。ファイルが無ければ空辞書。"""
    try:
        with open(path, "r", encoding="utf-8") as f:
            loaded = yaml.safe_load(f) or {}
            if not isinstance(loaded, dict):
                logger.warning(f"{path} is not a mapping, using defaults")
                return {}
            return loaded
    except FileNotFoundError:
        logger.warning(f"{path} not found, using defaults")
        return {}
    except Exception as e:
        logger.warning(f"Failed to load {path}: {e}")
        return {}


def _load_from_env() -> Dict[str, Any]:
    """IRRCALC_* 環境変数から上書き用の辞書を作る。変換できない値は無視してログに残す。"""
    result: Dict[str, Any] = {}
    for env_key, (section, key, cast) in _ENV_MAP.items():
        raw = os.getenv(env_key)
        if raw is None or not raw.strip():
            continue
        try:
            value = cast(raw.strip())
        except (TypeError, ValueError):
            logger.warning(f"invalid {env_key}={raw!r}, ignored")
            continue
        result.setdefault(section, {})[key] = value
    return result


def load_settings(settings_path: Path = _SETTINGS_PATH) -> Dict[str, Any]:
    """既定値・settings.yaml・環境変数をディープマージした統合設定を返す。"""
    merged = _deep_merge(DEFAULT_SETTINGS, _load_yaml_settings(settings_path))
    return _deep_merge(merged, _load_from_env())
