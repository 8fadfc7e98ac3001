import sys
from pathlib import Path

sys.path.append(str(Path(__file__).resolve().parents[1]))

from src.utils.config_loader import DEFAULT_SETTINGS, load_settings


def test_missing_yaml_falls_back_to_defaults(tmp_path, monkeypatch):
    for key in ("IRRCALC_SEED", "IRRCALC_PAIR_BUDGET", "IRRCALC_BLOWUP_BUDGET", "IRRCALC_ORACLE_RHO_MAG", "IRRCALC_LOG_LEVEL"):
        monkeypatch.delenv(key, raising=False)
    assert load_settings(tmp_path / "missing.yaml") == DEFAULT_SETTINGS


def test_yaml_and_environment_are_deep_merged(tmp_path, monkeypatch):
    path = tmp_path / "settings.yaml"
    path.write_text("sampling:\n  seed: 11\ncompactification:\n  scope: full\n", encoding="utf-8")
    monkeypatch.setenv("IRRCALC_BLOWUP_BUDGET", "8")
    monkeypatch.setenv("IRRCALC_SEED", "")
    monkeypatch.setenv("IRRCALC_ORACLE_RHO_MAG", "not-a-number")

    settings = load_settings(path)

    assert settings["sampling"]["seed"] == 11
    assert settings["sampling"]["t_min"] == DEFAULT_SETTINGS["sampling"]["t_min"]
    assert settings["compactification"] == {"blowup_budget": 8, "scope": "full"}
    assert settings["oracle"]["rho_log10"] is None


def test_environment_overrides_yaml(tmp_path, monkeypatch):
    path = tmp_path / "settings.yaml"
    path.write_text("sampling:\n  seed: 11\n", encoding="utf-8")
    monkeypatch.setenv("IRRCALC_SEED", "42")
    assert load_settings(path)["sampling"]["seed"] == 42


def test_non_mapping_yaml_is_ignored(tmp_path):
    path = tmp_path / "settings.yaml"
    path.write_text("- just\n- a list\n", encoding="utf-8")
    assert load_settings(path)["groebner"] == DEFAULT_SETTINGS["groebner"]


def test_shipped_settings_are_loadable():
    root = Path(__file__).resolve().parents[1]
    for name in ("settings.yaml", "settings.example.yaml"):
        settings = load_settings(root / "config" / name)
        assert set(DEFAULT_SETTINGS) <= set(settings)
