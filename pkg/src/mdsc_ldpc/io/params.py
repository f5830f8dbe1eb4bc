from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from pydantic import ValidationError

from ..ensemble import EnsembleParams
from ..exceptions import ParameterError, UsageError
from .models import EnsembleParamsModel


def _describe(exc: ValidationError) -> str:
    parts = []
    for error in exc.errors():
        where = ".".join(str(part) for part in error.get("loc", ())) or "document"
        parts.append(f"{where}: {error.get('msg', 'invalid')}")
    return "; ".join(parts)


def params_from_mapping(data: Mapping[str, Any]) -> EnsembleParams:
    """Validate a decoded parameter document; unknown keys are rejected."""

    try:
        model = EnsembleParamsModel.model_validate(dict(data))
    except ValidationError as exc:
        raise ParameterError(f"invalid ensemble parameters: {_describe(exc)}") from exc
    return model.to_params()


def load_params(path: str | Path) -> EnsembleParams:
    source = Path(path)
    try:
        raw = source.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read parameter file {source}: {exc.strerror or exc}") from exc
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParameterError(f"{source} is not valid JSON: {exc.msg} (line {exc.lineno})") from exc
    if not isinstance(data, dict):
        raise ParameterError(f"{source} must contain a JSON object")
    return params_from_mapping(data)


def save_params(p: EnsembleParams, path: str | Path) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with target.open("w", encoding="utf-8") as handle:
        json.dump(EnsembleParamsModel.from_params(p).model_dump(exclude_none=True), handle, indent=2)
        handle.write("\n")


__all__ = ["load_params", "save_params", "params_from_mapping"]
