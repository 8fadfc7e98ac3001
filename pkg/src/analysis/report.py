"""IR プロファイルの入れ物と、CLI が書き出すレポート JSON の形。"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from src.algebra.places import Place

AFFINE_DELTA1 = "affine_delta1"
BOUNDARY_DELTA1 = "boundary_delta1"
DELTA2 = "delta2"


@dataclass
class GermContribution:
    source: str
    component_id: str
    value: int

    def to_dict(self) -> Dict[str, Any]:
        return {"source": self.source, "component": self.component_id, "value": self.value}


@dataclass
class PlaceEntry:
    place: Place
    ir: int
    delta1: int = 0
    delta2: int = 0
    delta1_affine: int = 0
    delta1_boundary: int = 0
    contributions: List[GermContribution] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        if self.place.is_infinity:
            return {
                "ir": self.ir,
                "delta1_affine": self.delta1_affine,
                "delta1_boundary": self.delta1_boundary,
                "delta2": self.delta2,
                "contributions": [c.to_dict() for c in self.contributions],
            }
        return {"place": self.place.label(), "ir": self.ir, "delta1": self.delta1, "delta2": self.delta2}


@dataclass
class OracleComparison:
    place: Place
    chi: int
    ir: int
    symbolic: int

    @property
    def agrees(self) -> bool:
        return self.ir == self.symbolic

    def to_dict(self) -> Dict[str, Any]:
        return {"place": self.place.label(), "chi": self.chi, "ir": self.ir, "agrees": self.agrees}


@dataclass
class IrregularityReport:
    places: List[PlaceEntry] = field(default_factory=list)
    dependent: bool = False
    chiF: Optional[int] = None
    notes: List[str] = field(default_factory=list)

    def entry(self, place: Place) -> Optional[PlaceEntry]:
        for item in self.places:
            if item.place == place:
                return item
        return None

    def ir_at(self, place: Place) -> int:
        """IR at ``place``; places not listed have IR 0."""
        item = self.entry(place)
        return item.ir if item else 0

    @property
    def finite_places(self) -> List[PlaceEntry]:
        return sorted((p for p in self.places if not p.place.is_infinity), key=lambda p: p.place.sort_key())

    @property
    def infinity(self) -> PlaceEntry:
        item = self.entry(Place.infinity())
        return item if item else PlaceEntry(place=Place.infinity(), ir=0)


def to_report_json(
    report: IrregularityReport,
    f_text: str,
    g_text: str,
    seed: int,
    schema_version: int = 1,
    oracle: Optional[List[OracleComparison]] = None,
    timing: Optional[Dict[str, float]] = None,
) -> Dict[str, Any]:
    payload: Dict[str, Any] = {
        "schema_version": schema_version,
        "input": {"f": f_text, "g": g_text, "seed": seed},
        "dependent": report.dependent,
        "finite_places": [p.to_dict() for p in report.finite_places if p.ir != 0],
        "infinity": report.infinity.to_dict(),
        "notes": list(report.notes),
    }
    if report.dependent:
        payload["chiF"] = report.chiF
    if oracle is not None:
        payload["oracle"] = {"heuristic": True, "checks": [c.to_dict() for c in oracle]}
    if timing is not None:
        payload["timing"] = {k: round(v, 3) for k, v in timing.items()}
    return payload


def format_text(payload: Dict[str, Any]) -> str:
    """レポート JSON を人が読むためのテキストにする。"""

    lines = [f"f = {payload['input']['f']}", f"g = {payload['input']['g']}"]
    if payload["dependent"]:
        lines.append(f"dependent pair, chi(F) = {payload.get('chiF')}")
    for entry in payload["finite_places"]:
        lines.append(f"IR[{entry['place']}] = {entry['ir']}")
    inf = payload["infinity"]
    lines.append(
        f"IR[inf] = {inf['ir']} (delta1 affine {inf['delta1_affine']}, "
        f"delta1 boundary {inf['delta1_boundary']}, delta2 {inf['delta2']})"
    )
    if "oracle" in payload:
        for check in payload["oracle"]["checks"]:
            mark = "ok" if check["agrees"] else "MISMATCH"
            lines.append(f"oracle[{check['place']}] chi={check['chi']} ir={check['ir']} {mark}")
    for note in payload.get("notes", []):
        lines.append(f"note: {note}")
    return "\n".join(lines)
