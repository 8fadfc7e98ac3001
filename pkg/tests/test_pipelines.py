import sys
from pathlib import Path

import numpy as np
import pytest
from sympy import Poly, QQ, Rational

sys.path.append(str(Path(__file__).resolve().parents[1]))

from src.algebra.places import Place
from src.algebra.polynomials import S, X, Y, as_poly, substitute
from src.analysis.discriminant_cycle import jacobian
from src.errors import DegenerateInputError
from src.pipelines.analyzer import analyze, select_pipeline
from src.pipelines.dependent_pipeline import DependentPipeline
from src.pipelines.independent_pipeline import IndependentPipeline


def test_select_pipeline(settings):
    assert isinstance(select_pipeline(as_poly(X), as_poly(Y), settings), IndependentPipeline)
    assert isinstance(select_pipeline(as_poly(X), as_poly(X ** 2), settings), DependentPipeline)
    assert isinstance(select_pipeline(as_poly(X), as_poly(0), settings), DependentPipeline)


def test_constant_f_is_degenerate(settings):
    with pytest.raises(DegenerateInputError) as excinfo:
        select_pipeline(as_poly(3), as_poly(Y), settings)
    assert excinfo.value.exit_code == 3


def test_independent_profile(settings):
    report, pipeline = analyze(as_poly(X), as_poly(Y + X * (X - 1) * Y ** 2), settings)
    assert not report.dependent
    assert [(e.place.label(), e.ir) for e in report.finite_places] == [("0", 1), ("1", 1)]
    assert report.infinity.ir == 0
    # 総和則: 有限点の IR (次数つき) とアフィン寄与の和は deg_s R
    finite = sum(e.ir * e.place.degree for e in report.finite_places)
    assert finite + report.infinity.delta1_affine == pipeline.pushforward.R.degree(S)
    dump = pipeline.dump()
    assert dump["R"] is not None
    assert dump["components"]


def test_requested_place_is_reported_even_when_zero(settings):
    report, _ = analyze(as_poly(X), as_poly(Y + X * Y ** 2), settings, at=Place.rational(5))
    entry = report.entry(Place.rational(5))
    assert entry is not None and entry.ir == 0
    assert report.ir_at(Place.rational(0)) == 1


def test_dependent_profile(settings):
    report, pipeline = analyze(as_poly(X ** 2), as_poly(X ** 3), settings, at=Place.rational(1))
    assert report.dependent
    assert report.chiF == 1
    assert report.infinity.ir == -3
    assert report.ir_at(Place.rational(1)) == 0
    assert pipeline.dump() == {"W": "s^3 - t^2", "chiF": 1}


def test_untwisted_note(settings):
    report, _ = analyze(as_poly(X ** 2 + Y), as_poly(0), settings)
    assert report.infinity.ir == 0
    assert any("g is constant" in note for note in report.notes)


def test_dump_before_run_is_empty(settings):
    assert IndependentPipeline(settings).dump() is None
    assert DependentPipeline(settings).dump() is None


def test_untwisted_direct_image_is_regular(settings):
    rng = np.random.default_rng(0)
    for _ in range(5):
        terms = {(i, j): int(rng.integers(-4, 5)) for i in range(5) for j in range(5 - i)}
        terms[(1, 0)] = terms[(1, 0)] or 1
        f = Poly.from_dict(terms, X, Y, domain=QQ)
        report, _ = analyze(f, as_poly(0), settings)
        assert report.dependent
        assert report.finite_places == []
        assert report.infinity.ir == 0


def _profile(f, g, settings):
    report, _ = analyze(f, g, settings)
    return [(e.place.label(), e.ir) for e in report.finite_places if e.ir], report.infinity.ir


_ONE_PLACE = (as_poly(X), as_poly(Y + X * Y ** 2))
_TWO_PLACES = (as_poly(X), as_poly(Y + X * (X - 1) * Y ** 2))


@pytest.mark.parametrize("shift", [Rational(-3), Rational(5, 2), Rational(1000)])
@pytest.mark.parametrize("pair", [_ONE_PLACE, _TWO_PLACES], ids=["one_place", "two_places"])
def test_profile_is_unchanged_by_translating_g(settings, pair, shift):
    f, g = pair
    assert _profile(f, g + shift, settings) == _profile(f, g, settings)


@pytest.mark.slow
@pytest.mark.parametrize(
    "pair, expected",
    [(_ONE_PLACE, ([("0", 1)], 0)), (_TWO_PLACES, ([("0", 1), ("1", 1)], 0))],
    ids=["one_place", "two_places"],
)
def test_profile_is_unchanged_by_unimodular_affine_changes(settings, pair, expected):
    rng = np.random.default_rng(7)
    f, g = pair
    for _ in range(5):
        a, b, c, d = (int(v) for v in rng.integers(-3, 4, size=4))
        # (x, y) <- (x + a*y, y) の後に (x, y) <- (x, y + b*x) と平行移動 (c, d)、行列式は 1
        u = X + a * (Y + b * X) + c
        v = Y + b * X + d
        moved = [substitute(p, {X: u, Y: v}) for p in (f, g)]
        assert _profile(*moved, settings) == expected


def _random_pair(rng):
    while True:
        polys = []
        for _ in range(2):
            terms = {}
            for _ in range(3):
                i = int(rng.integers(0, 4))
                j = int(rng.integers(0, 4 - i))
                terms[(i, j)] = terms.get((i, j), 0) + int(rng.integers(-3, 4))
            polys.append(Poly.from_dict(terms, X, Y, domain=QQ))
        f, g = polys
        if f.total_degree() > 0 and not jacobian(f, g).is_zero:
            return f, g


@pytest.mark.slow
def test_independent_irregularity_is_nonnegative(settings):
    rng = np.random.default_rng(0)
    for _ in range(10):
        f, g = _random_pair(rng)
        report, _ = analyze(f, g, settings)
        assert not report.dependent
        assert all(e.ir >= 0 for e in report.places), (f.as_expr(), g.as_expr())
        assert report.infinity.ir >= 0, (f.as_expr(), g.as_expr())
