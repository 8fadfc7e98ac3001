"""
irrcalc コマンドラインのエントリーポイント
f₊(O e^g) の各点 c ∈ P^1 における IR_c を計算する。

Usage:
    python -m src.main analyze --f "x" --g "y + x*y^2"
    python -m src.main corpus config/corpus.jsonl --oracle
"""
import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Optional

from src.algebra.places import Place
from src.analysis.report import format_text, to_report_json
from src.errors import IrrcalcError, OracleDisagreement
from src.oracle.fiber_topology import cross_check
from src.pipelines.analyzer import analyze
from src.utils.config_loader import load_settings
from src.utils.corpus_loader import run_corpus
from src.utils.parser import parse_place, parse_poly

logger = logging.getLogger(__name__)


def _configure_logging(settings: Dict[str, Any]) -> None:
    options = settings.get("logging", {})
    logging.basicConfig(
        level=getattr(logging, str(options.get("level", "INFO")).upper(), logging.INFO),
        format=options.get("format", "%(asctime)s %(levelname)s %(message)s"),
    )


def _apply_overrides(settings: Dict[str, Any], args: argparse.Namespace) -> Dict[str, Any]:
    """CLI フラグで設定を上書きする (settings.yaml / 環境変数より優先)。"""
    if getattr(args, "seed", None) is not None:
        settings.setdefault("sampling", {})["seed"] = args.seed
    if getattr(args, "oracle_rho_mag", None) is not None:
        settings.setdefault("oracle", {})["rho_log10"] = args.oracle_rho_mag
    return settings


def _write_json(path: str, payload: Dict[str, Any]) -> None:
    Path(path).write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    logger.info(f"wrote {path}")


def run_analyze(args: argparse.Namespace, settings: Dict[str, Any]) -> int:
    timing: Dict[str, float] = {}
    start = time.perf_counter()
    f, g = parse_poly(args.f), parse_poly(args.g)
    at = parse_place(args.at) if args.at else None
    report, pipeline = analyze(f, g, settings, at)
    timing["symbolic"] = time.perf_counter() - start

    comparisons = None
    if args.oracle:
        start = time.perf_counter()
        places = None
        if at is not None:
            places = [e.place for e in report.finite_places if e.ir != 0]
            for extra in (at, Place.infinity()):
                if extra not in places:
                    places.append(extra)
        comparisons = cross_check(report, f, g, settings, places)
        report.notes.append("oracle thresholds are heuristic")
        timing["oracle"] = time.perf_counter() - start

    seed = int(settings.get("sampling", {}).get("seed", 0))
    payload = to_report_json(
        report,
        args.f,
        args.g,
        seed,
        schema_version=int(settings.get("report", {}).get("schema_version", 1)),
        oracle=comparisons,
        timing=timing,
    )
    print(format_text(payload))
    if args.json:
        _write_json(args.json, payload)
    if args.dump_resolution:
        _write_json(args.dump_resolution, pipeline.dump() or {})

    if args.strict and comparisons and not all(c.agrees for c in comparisons):
        raise OracleDisagreement(
            "oracle disagrees at " + ", ".join(c.place.label() for c in comparisons if not c.agrees)
        )
    return 0


def run_corpus_command(args: argparse.Namespace, settings: Dict[str, Any]) -> int:
    result = run_corpus(Path(args.path), settings, oracle=args.oracle)
    if not result.table.empty:
        print(result.table.to_string(index=False))
    for name, diffs in result.failures.items():
        for diff in diffs:
            print(f"FAIL {name}: {diff}")
    print(f"{len(result.table) - len(result.failures)}/{len(result.table)} entries passed")
    return 0 if result.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="irrcalc", description="Irregularity numbers of f_+(O e^g)")
    parser.add_argument("--config", default="config/settings.yaml", help="settings YAML path")
    sub = parser.add_subparsers(dest="command")

    analyze_parser = sub.add_parser("analyze", help="IR profile of one pair (f, g)")
    analyze_parser.add_argument("--f", required=True, help='polynomial in x, y, e.g. "x^2 + y^3"')
    analyze_parser.add_argument("--g", required=True, help="polynomial in x, y")
    analyze_parser.add_argument("--at", default=None, help='place to report: "inf", "1/2" or "s^2 - 2"')
    analyze_parser.add_argument("--oracle", action="store_true", help="cross-check with the numeric oracle")
    analyze_parser.add_argument("--strict", action="store_true", help="exit 5 when the oracle disagrees")
    analyze_parser.add_argument("--seed", type=int, default=None, help="sampling seed")
    analyze_parser.add_argument("--json", default=None, help="write the report JSON to this path")
    analyze_parser.add_argument("--dump-resolution", default=None, help="write charts and components as JSON")
    analyze_parser.add_argument("--oracle-rho-mag", type=float, default=None, help="log10 of |rho| for the oracle")

    corpus_parser = sub.add_parser("corpus", help="run a regression corpus (JSON lines)")
    corpus_parser.add_argument("path", help="corpus file")
    corpus_parser.add_argument("--oracle", action="store_true", help="also check oracle concordance")
    corpus_parser.add_argument("--seed", type=int, default=None, help="sampling seed")
    return parser


def main(argv: Optional[List[str]] = None) -> None:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        sys.exit(1)

    settings = _apply_overrides(load_settings(Path(args.config)), args)
    _configure_logging(settings)

    try:
        code = run_analyze(args, settings) if args.command == "analyze" else run_corpus_command(args, settings)
    except IrrcalcError as e:
        logger.error(f"{type(e).__name__}: {e}")
        sys.exit(e.exit_code)
    except Exception as e:
        logger.exception(f"unexpected error: {type(e).__name__}: {e}")
        sys.exit(1)
    sys.exit(code)


if __name__ == "__main__":
    main()
