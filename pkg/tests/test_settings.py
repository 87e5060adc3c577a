import logging
from pathlib import Path

import pytest

from bicm.config.runtime import build_quadrature, configure_logging
from bicm.config.settings import get_settings


def test_defaults() -> None:
    settings = get_settings()
    assert settings.quad_nodes == 64
    assert settings.seed == 20120101
    assert settings.workers == 4
    assert settings.search_max_order == 8
    assert settings.shaping_step == 0.05
    assert settings.resolved_results_dir == settings.project_root / "results"
    assert settings.result_path("a.csv").name == "a.csv"


def test_environment_overrides(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("BICM_QUAD_NODES", "32")
    monkeypatch.setenv("BICM_WORKERS", "1")
    get_settings.cache_clear()
    settings = get_settings()
    assert settings.quad_nodes == 32
    assert settings.workers == 1


def test_yaml_file_wins_over_environment(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    config = tmp_path / "app.yaml"
    config.write_text("quad_nodes: 16\nresults_dir: out\n", encoding="utf-8")
    monkeypatch.setenv("CONFIG_PATH", str(config))
    monkeypatch.setenv("BICM_QUAD_NODES", "32")
    get_settings.cache_clear()
    settings = get_settings()
    assert settings.quad_nodes == 16
    assert settings.resolved_results_dir == settings.project_root / "out"


def test_build_quadrature_picks_method() -> None:
    settings = get_settings()
    default = build_quadrature(settings)
    assert default.method == "gauss-hermite"
    assert default.nodes == 64
    sampled = build_quadrature(settings, samples=1000)
    assert sampled.method == "monte-carlo"
    assert sampled.samples == 1000
    assert sampled.seed == settings.seed


def test_configure_logging_level() -> None:
    configure_logging(level="DEBUG", force=True)
    assert logging.getLogger().level == logging.DEBUG
    configure_logging(level="WARNING", force=True)
    assert logging.getLogger().level == logging.WARNING
