import sys
from pathlib import Path

import pytest
from sympy import Poly, QQ

sys.path.append(str(Path(__file__).resolve().parents[1]))

from src.algebra.polynomials import S, T, X, Y, as_poly, format_poly
from src.analysis.compactification import (
    BOUNDARY,
    CURVE,
    FULL,
    JOINT,
    germ_at_infinity,
    irregularity_at_infinity,
    resolve,
)
from src.analysis.report import AFFINE_DELTA1, DELTA2
from src.errors import DepthExceeded


def _settings(settings, scope):
    merged = dict(settings)
    merged["compactification"] = {**settings["compactification"], "scope": scope}
    return merged


def test_germ_at_infinity():
    assert germ_at_infinity(Poly(S ** 3 - T ** 2, S, T, domain=QQ)) == 3
    assert germ_at_infinity(Poly(S ** 3 - T ** 2, S, T, domain=QQ), mult=2) == 6
    assert germ_at_infinity(Poly(S - T, S, T, domain=QQ)) == 1
    # lc_t = s: 枝は s = 0 に向かう
    assert germ_at_infinity(Poly(4 * S * T + 1, S, T, domain=QQ)) == 0
    assert germ_at_infinity(Poly(S - 1, S, T, domain=QQ)) == 0
    assert germ_at_infinity(None) == 0


def test_resolution_of_one_place_pair():
    resolution = resolve(as_poly(X), as_poly(Y + X * Y ** 2), scope=JOINT)
    charts, components = resolution
    assert [c.id for c in components] == ["L", "E1"]
    assert resolution.blowups == 1
    assert resolution.component("E1").kind == BOUNDARY
    assert not any(c.relevant for c in components)
    assert all(chart.check_inverse() for chart in charts)
    assert resolution.inert_points
    with pytest.raises(KeyError):
        resolution.component("E9")


def test_blowup_budget():
    with pytest.raises(DepthExceeded):
        resolve(as_poly(X), as_poly(Y + X * Y ** 2), scope=JOINT, budget=0)


def test_resolution_dump_is_plain_data():
    payload = resolve(as_poly(X), as_poly(Y + X * Y ** 2), scope=JOINT).to_dict()
    assert payload["scope"] == JOINT
    assert payload["charts"][0]["field"] == "QQ"
    assert {c["id"] for c in payload["components"]} == {"L", "E1"}


def test_relevant_component_with_diagonal_image(settings):
    f, g = as_poly(X * Y), as_poly(X * Y + Y)
    resolution = resolve(f, g, scope=JOINT)
    relevant = [c for c in resolution.components if c.relevant]
    assert len(relevant) == 1
    assert relevant[0].kind == CURVE
    assert relevant[0].crit_mult == 0
    assert format_poly(relevant[0].image) == "s - t"
    entry = irregularity_at_infinity(f, g, settings=settings, resolution=resolution)
    assert entry.ir == 1
    assert entry.delta2 == 1
    assert entry.delta1_boundary == 0
    assert [c.source for c in entry.contributions] == [AFFINE_DELTA1, DELTA2]


@pytest.mark.parametrize(
    "f, g, expected",
    [
        (X, Y, 0),
        (X, Y + X * Y ** 2, 0),
        (X, X * Y, 0),
        (X, Y ** 2 + X * Y, 2),
        (X * Y, X * Y + Y ** 2, 2),
    ],
)
def test_irregularity_at_infinity(settings, f, g, expected):
    entry = irregularity_at_infinity(as_poly(f), as_poly(g), settings=settings)
    assert entry.ir == expected
    assert entry.ir == entry.delta1 + entry.delta2
    assert entry.delta1 == entry.delta1_affine + entry.delta1_boundary


def test_joint_and_full_scope_agree(settings):
    f, g = as_poly(X), as_poly(Y + X * Y ** 2)
    joint = irregularity_at_infinity(f, g, settings=_settings(settings, JOINT))
    full = irregularity_at_infinity(f, g, settings=_settings(settings, FULL))
    assert joint.ir == full.ir == 0
    assert resolve(f, g, scope=FULL).blowups >= resolve(f, g, scope=JOINT).blowups


def test_unknown_scope_is_rejected():
    with pytest.raises(ValueError):
        resolve(as_poly(X), as_poly(Y), scope="partial")
