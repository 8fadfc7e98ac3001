import sys
from pathlib import Path

import pytest

sys.path.append(str(Path(__file__).resolve().parents[1]))

from src.utils.config_loader import DEFAULT_SETTINGS, _deep_merge  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: end-to-end checks that run the numeric oracle or the whole corpus")


@pytest.fixture
def settings():
    """Default settings with a fixed seed (no settings.yaml, no environment)."""
    return _deep_merge(DEFAULT_SETTINGS, {"sampling": {"seed": 0}})
