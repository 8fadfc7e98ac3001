import sys
from pathlib import Path

import pytest

sys.path.append(str(Path(__file__).resolve().parents[1]))

from src.utils.sampling import SampleStream


def test_stream_is_deterministic_and_distinct():
    first = SampleStream(seed=7).take(50)
    second = SampleStream(seed=7).take(50)
    assert first == second
    assert len(set(first)) == 50
    assert all(1000 <= v <= 1000000 for v in first)


def test_points_are_signed():
    stream = SampleStream(seed=1)
    values = [v for _ in range(20) for v in stream.point()]
    assert any(v < 0 for v in values) and any(v > 0 for v in values)


def test_empty_range_is_rejected():
    with pytest.raises(ValueError):
        SampleStream(low=5, high=5)
