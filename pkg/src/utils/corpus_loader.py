"""Regression corpus: JSON lines ``{"name", "f", "g", "expected"}``."""
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import pandas as pd

from src.analysis.report import to_report_json
from src.errors import CorpusFormatError, IrrcalcError
from src.oracle.fiber_topology import cross_check
from src.pipelines.analyzer import analyze
from src.utils.parser import parse_poly

logger = logging.getLogger(__name__)

_CORPUS_PATH = Path("config/corpus.jsonl")


@dataclass
class CorpusEntry:
    name: str
    f: str
    g: str
    expected: Dict[str, Any] = field(default_factory=dict)
    line: int = 0


@dataclass
class CorpusResult:
    table: pd.DataFrame
    failures: Dict[str, List[str]]

    @property
    def passed(self) -> bool:
        return not self.failures


def load_corpus(path: Path = _CORPUS_PATH) -> List[CorpusEntry]:
    """Read a corpus file. Blank lines and lines starting with '#' are skipped."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError as exc:
        raise CorpusFormatError(f"corpus file not found: {path}") from exc
    entries: List[CorpusEntry] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusFormatError(f"{path}:{number}: not valid JSON ({exc.msg})") from exc
        if not isinstance(record, dict) or "f" not in record or "g" not in record:
            raise CorpusFormatError(f"{path}:{number}: entry needs string keys 'f' and 'g'")
        expected = record.get("expected", {}) or {}
        if not isinstance(expected, dict):
            raise CorpusFormatError(f"{path}:{number}: 'expected' must be an object")
        entries.append(
            CorpusEntry(
                name=str(record.get("name", f"line{number}")),
                f=str(record["f"]),
                g=str(record["g"]),
                expected=expected,
                line=number,
            )
        )
    if not entries:
        logger.warning(f"{path} contains no corpus entries")
    return entries


def compare_expected(actual: Any, expected: Any, prefix: str = "") -> List[str]:
    """Differences between a report payload and an expected fragment. Keys absent from
    ``expected`` are not compared."""
    if isinstance(expected, dict):
        if not isinstance(actual, dict):
            return [f"{prefix or '.'}: expected an object, got {actual!r}"]
        diffs: List[str] = []
        for key, value in expected.items():
            path = f"{prefix}.{key}" if prefix else key
            if key not in actual:
                diffs.append(f"{path}: missing")
                continue
            diffs.extend(compare_expected(actual[key], value, path))
        return diffs
    if isinstance(expected, list):
        if not isinstance(actual, list) or len(actual) != len(expected):
            return [f"{prefix}: expected {expected!r}, got {actual!r}"]
        diffs = []
        for i, (a, e) in enumerate(zip(actual, expected)):
            diffs.extend(compare_expected(a, e, f"{prefix}[{i}]"))
        return diffs
    if actual != expected:
        return [f"{prefix}: expected {expected!r}, got {actual!r}"]
    return []


def run_corpus(
    path: Path,
    settings: Dict[str, Any],
    oracle: bool = False,
    analyze_fn: Callable = analyze,
) -> CorpusResult:
    entries = load_corpus(path)
    seed = int(settings.get("sampling", {}).get("seed", 0))
    rows: List[Dict[str, Any]] = []
    failures: Dict[str, List[str]] = {}
    for entry in entries:
        row: Dict[str, Any] = {"entry": entry.name, "f": entry.f, "g": entry.g}
        try:
            f, g = parse_poly(entry.f), parse_poly(entry.g)
            report, _ = analyze_fn(f, g, settings)
            comparisons: Optional[list] = cross_check(report, f, g, settings) if oracle else None
            payload = to_report_json(report, entry.f, entry.g, seed, oracle=comparisons)
        except IrrcalcError as exc:
            logger.error(f"{entry.name}: {type(exc).__name__}: {exc}")
            failures[entry.name] = [f"{type(exc).__name__}: {exc}"]
            rows.append({**row, "dependent": None, "places": "", "status": "error"})
            continue
        diffs = compare_expected(payload, entry.expected)
        if comparisons is not None:
            diffs.extend(f"oracle disagrees at {c.place}: {c.ir} != {c.symbolic}" for c in comparisons if not c.agrees)
        places = ", ".join(f"{p['place']}:{p['ir']}" for p in payload["finite_places"])
        places = f"{places}; inf:{payload['infinity']['ir']}" if places else f"inf:{payload['infinity']['ir']}"
        rows.append({**row, "dependent": payload["dependent"], "places": places, "status": "fail" if diffs else "pass"})
        if diffs:
            failures[entry.name] = diffs
            for diff in diffs:
                logger.warning(f"{entry.name}: {diff}")
    table = pd.DataFrame(rows, columns=["entry", "f", "g", "dependent", "places", "status"])
    return CorpusResult(table=table, failures=failures)
