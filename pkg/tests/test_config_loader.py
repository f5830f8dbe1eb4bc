from __future__ import annotations

from pathlib import Path

import pytest

from mdsc_ldpc.config.loader import (
    CONFIG_ENV_VAR,
    ConfigError,
    load_config,
    save_config,
)


def test_defaults_when_file_missing(tmp_path, monkeypatch):
    cfg_path = tmp_path / "missing.yml"
    monkeypatch.setenv(CONFIG_ENV_VAR, str(cfg_path))

    cfg = load_config()
    assert cfg.de.delta == 1e-12
    assert cfg.de.max_iterations == 200000
    assert cfg.de.resolution == 1e-5
    assert cfg.window.max_window_iters == 10000
    assert cfg.search.workers == 1
    assert cfg.monte_carlo.seed == 20240611
    assert cfg.output.significant_digits == 6
    assert cfg.output.threshold_decimals == 4
    assert cfg.source_path == cfg_path.resolve()


def test_config_load_save_roundtrip(tmp_path, monkeypatch):
    cfg_path = tmp_path / "mdsc.yml"
    monkeypatch.setenv(CONFIG_ENV_VAR, str(cfg_path))

    cfg = load_config()
    cfg.de.resolution = 1e-4
    cfg.window.max_window_iters = 500
    cfg.search.workers = 4
    cfg.search.tie_factor = 3.0
    cfg.monte_carlo.seed = 7
    save_config(cfg)

    loaded = load_config()
    assert loaded.de.resolution == 1e-4
    assert loaded.window.max_window_iters == 500
    assert loaded.search.workers == 4
    assert loaded.search.tie_factor == 3.0
    assert loaded.monte_carlo.seed == 7
    assert loaded.source_path == Path(cfg_path).resolve()


def test_partial_file_merges_with_defaults(tmp_path, monkeypatch):
    cfg_path = tmp_path / "partial.yml"
    cfg_path.write_text("de:\n  delta: 1.0e-10\n", encoding="utf-8")
    monkeypatch.setenv(CONFIG_ENV_VAR, str(cfg_path))

    cfg = load_config()
    assert cfg.de.delta == 1e-10
    assert cfg.de.tol_fp == 1e-10
    assert cfg.search.coarse_resolution == 1e-3


@pytest.mark.parametrize(
    "body",
    [
        "de:\n  delta: 2\n",
        "de:\n  max_iterations: -3\n",
        "search:\n  refine_fraction: 1.5\n",
        "search:\n  workers: many\n",
        "monte_carlo:\n  seed: -1\n",
        "window: 12\n",
        "- just\n- a list\n",
    ],
)
def test_invalid_values_raise(tmp_path, monkeypatch, body):
    cfg_path = tmp_path / "invalid.yml"
    cfg_path.write_text(body, encoding="utf-8")
    monkeypatch.setenv(CONFIG_ENV_VAR, str(cfg_path))
    with pytest.raises(ConfigError):
        load_config()


def test_unparseable_yaml_raises(tmp_path, monkeypatch):
    cfg_path = tmp_path / "broken.yml"
    cfg_path.write_text("de: [unclosed\n", encoding="utf-8")
    monkeypatch.setenv(CONFIG_ENV_VAR, str(cfg_path))
    with pytest.raises(ConfigError):
        load_config()
