from __future__ import annotations

import copy
import importlib.resources
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, cast

import yaml

CONFIG_ENV_VAR = "MDSC_CONFIG"

_CONFIG_FILENAME = "mdsc_ldpc.yml"
_DEFAULT_CONFIG_RESOURCE = "default_config.yaml"


class ConfigError(Exception):
    """Raised when the configuration file is malformed or invalid."""


def _load_default_config() -> Dict[str, Any]:
    resource = importlib.resources.files("mdsc_ldpc.resources") / _DEFAULT_CONFIG_RESOURCE
    try:
        raw_text = resource.read_text(encoding="utf-8")
    except (FileNotFoundError, OSError):
        raw_text = None
    if raw_text is None:
        return {
            "de": {"delta": 1e-12, "max_iterations": 200000, "tol_fp": 1e-10, "resolution": 1e-5},
            "window": {"max_window_iters": 10000},
            "search": {
                "coarse_resolution": 1e-3,
                "refine_fraction": 0.1,
                "tie_factor": 2.0,
                "workers": 1,
            },
            "monte_carlo": {"seed": 20240611, "trials": 100000},
            "output": {
                "significant_digits": 6,
                "threshold_decimals": 4,
                "table1_tolerance": 5e-4,
                "table1_gap_tolerance": 2e-4,
            },
        }
    data = yaml.safe_load(raw_text) or {}
    if not isinstance(data, dict):
        raise ConfigError("default_config.yaml must contain a mapping at the top level")
    return cast(Dict[str, Any], data)


_DEFAULT_CONFIG_DATA: Dict[str, Any] = _load_default_config()


def _default_config_candidates() -> list[Path]:
    candidates: list[Path] = []

    def _add(path: Path) -> None:
        resolved = path.expanduser().resolve()
        if resolved not in candidates:
            candidates.append(resolved)

    _add(Path.home() / ".mdsc_ldpc" / _CONFIG_FILENAME)
    _add(Path.cwd() / _CONFIG_FILENAME)
    return candidates


@dataclass
class DEConfig:
    delta: float = 1e-12
    max_iterations: int = 200000
    tol_fp: float = 1e-10
    resolution: float = 1e-5


@dataclass
class WindowConfig:
    max_window_iters: int = 10000


@dataclass
class SearchConfig:
    coarse_resolution: float = 1e-3
    refine_fraction: float = 0.1
    tie_factor: float = 2.0
    workers: int = 1


@dataclass
class MonteCarloConfig:
    seed: int = 20240611
    trials: int = 100000


@dataclass
class OutputConfig:
    significant_digits: int = 6
    threshold_decimals: int = 4
    table1_tolerance: float = 5e-4
    table1_gap_tolerance: float = 2e-4


@dataclass
class MdscConfig:
    de: DEConfig = field(default_factory=DEConfig)
    window: WindowConfig = field(default_factory=WindowConfig)
    search: SearchConfig = field(default_factory=SearchConfig)
    monte_carlo: MonteCarloConfig = field(default_factory=MonteCarloConfig)
    output: OutputConfig = field(default_factory=OutputConfig)
    _source_path: Optional[Path] = field(default=None, repr=False, compare=False)

    @property
    def source_path(self) -> Optional[Path]:
        return self._source_path

    def with_source(self, path: Path) -> "MdscConfig":
        self._source_path = path
        return self


def _default_dict() -> Dict[str, Any]:
    return copy.deepcopy(_DEFAULT_CONFIG_DATA)


def _resolve_config_path() -> Path:
    env_override = os.environ.get(CONFIG_ENV_VAR)
    if env_override:
        return Path(env_override).expanduser().resolve()
    for candidate in _default_config_candidates():
        if candidate.exists():
            return candidate
    return _default_config_candidates()[0]


def _section(merged: Dict[str, Any], name: str) -> Dict[str, Any]:
    section = merged.get(name, {})
    if section is None:
        return {}
    if not isinstance(section, dict):
        raise ConfigError(f"{name} must be a mapping")
    return section


def _positive_float(section: Dict[str, Any], name: str, key: str, default: float) -> float:
    raw = section.get(key, default)
    try:
        value = float(raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{name}.{key} must be a number") from exc
    if not value > 0:
        raise ConfigError(f"{name}.{key} must be positive")
    return value


def _positive_int(section: Dict[str, Any], name: str, key: str, default: int) -> int:
    raw = section.get(key, default)
    if isinstance(raw, bool):
        raise ConfigError(f"{name}.{key} must be an integer")
    try:
        value = int(raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{name}.{key} must be an integer") from exc
    if value != raw and not isinstance(raw, str):
        raise ConfigError(f"{name}.{key} must be an integer")
    if value <= 0:
        raise ConfigError(f"{name}.{key} must be positive")
    return value


def _coerce_de(section: Dict[str, Any]) -> DEConfig:
    delta = _positive_float(section, "de", "delta", 1e-12)
    if delta >= 1:
        raise ConfigError("de.delta must be below 1")
    return DEConfig(
        delta=delta,
        max_iterations=_positive_int(section, "de", "max_iterations", 200000),
        tol_fp=_positive_float(section, "de", "tol_fp", 1e-10),
        resolution=_positive_float(section, "de", "resolution", 1e-5),
    )


def _coerce_window(section: Dict[str, Any]) -> WindowConfig:
    return WindowConfig(max_window_iters=_positive_int(section, "window", "max_window_iters", 10000))


def _coerce_search(section: Dict[str, Any]) -> SearchConfig:
    refine = _positive_float(section, "search", "refine_fraction", 0.1)
    if refine > 1:
        raise ConfigError("search.refine_fraction must be at most 1")
    return SearchConfig(
        coarse_resolution=_positive_float(section, "search", "coarse_resolution", 1e-3),
        refine_fraction=refine,
        tie_factor=_positive_float(section, "search", "tie_factor", 2.0),
        workers=_positive_int(section, "search", "workers", 1),
    )


def _coerce_monte_carlo(section: Dict[str, Any]) -> MonteCarloConfig:
    raw_seed = section.get("seed", 20240611)
    try:
        seed = int(raw_seed)
    except (TypeError, ValueError) as exc:
        raise ConfigError("monte_carlo.seed must be an integer") from exc
    if seed < 0 or seed >= 2**64:
        raise ConfigError("monte_carlo.seed must fit in 64 unsigned bits")
    return MonteCarloConfig(seed=seed, trials=_positive_int(section, "monte_carlo", "trials", 100000))


def _coerce_output(section: Dict[str, Any]) -> OutputConfig:
    return OutputConfig(
        significant_digits=_positive_int(section, "output", "significant_digits", 6),
        threshold_decimals=_positive_int(section, "output", "threshold_decimals", 4),
        table1_tolerance=_positive_float(section, "output", "table1_tolerance", 5e-4),
        table1_gap_tolerance=_positive_float(section, "output", "table1_gap_tolerance", 2e-4),
    )


def _coerce_config(raw: Dict[str, Any]) -> MdscConfig:
    if not isinstance(raw, dict):
        raise ConfigError("configuration must contain a mapping at the top level")
    merged = _default_dict()
    for key, value in raw.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = {**merged[key], **value}
        else:
            merged[key] = value

    return MdscConfig(
        de=_coerce_de(_section(merged, "de")),
        window=_coerce_window(_section(merged, "window")),
        search=_coerce_search(_section(merged, "search")),
        monte_carlo=_coerce_monte_carlo(_section(merged, "monte_carlo")),
        output=_coerce_output(_section(merged, "output")),
    )


def load_config() -> MdscConfig:
    path = _resolve_config_path()
    if path.exists():
        try:
            with path.open("r", encoding="utf-8") as handle:
                raw = yaml.safe_load(handle) or {}
        except yaml.YAMLError as exc:
            raise ConfigError(f"Unable to parse {path}: {exc}") from exc
    else:
        raw = {}
    config = _coerce_config(raw)
    config.with_source(path)
    return config


def save_config(config: MdscConfig) -> None:
    target = config.source_path or _resolve_config_path()
    data = {
        "de": {
            "delta": float(config.de.delta),
            "max_iterations": int(config.de.max_iterations),
            "tol_fp": float(config.de.tol_fp),
            "resolution": float(config.de.resolution),
        },
        "window": {"max_window_iters": int(config.window.max_window_iters)},
        "search": {
            "coarse_resolution": float(config.search.coarse_resolution),
            "refine_fraction": float(config.search.refine_fraction),
            "tie_factor": float(config.search.tie_factor),
            "workers": int(config.search.workers),
        },
        "monte_carlo": {
            "seed": int(config.monte_carlo.seed),
            "trials": int(config.monte_carlo.trials),
        },
        "output": {
            "significant_digits": int(config.output.significant_digits),
            "threshold_decimals": int(config.output.threshold_decimals),
            "table1_tolerance": float(config.output.table1_tolerance),
            "table1_gap_tolerance": float(config.output.table1_gap_tolerance),
        },
    }
    target.parent.mkdir(parents=True, exist_ok=True)
    with target.open("w", encoding="utf-8") as handle:
        yaml.safe_dump(data, handle, sort_keys=False)
    config.with_source(target)


__all__ = [
    "CONFIG_ENV_VAR",
    "MdscConfig",
    "DEConfig",
    "WindowConfig",
    "SearchConfig",
    "MonteCarloConfig",
    "OutputConfig",
    "ConfigError",
    "load_config",
    "save_config",
]
