"""JSON and CSV artifacts.

Each run writes one JSON document ``{"manifest": ..., "result": ...}`` and,
for sweeps, a CSV whose floats carry six significant digits.
"""

from __future__ import annotations

import csv
import json
import logging
import math
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Mapping, Optional, Sequence, TextIO

import numpy as np

from .models import RunManifest

logger = logging.getLogger(__name__)

SIGNIFICANT_DIGITS = 6
THRESHOLD_DECIMALS = 4


def format_float(value: float, digits: int = SIGNIFICANT_DIGITS) -> str:
    if value is None:
        return ""
    value = float(value)
    if math.isnan(value) or math.isinf(value):
        return str(value)
    return f"{value:.{digits}g}"


def threshold_digits(value: float, digits: int = SIGNIFICANT_DIGITS, decimals: int = THRESHOLD_DECIMALS) -> str:
    """Threshold at the four-decimal table convention, taken from its printed form."""

    printed = float(format_float(value, digits))
    return f"{printed:.{decimals}f}"


def _cell(value: Any, digits: int) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (float, np.floating)):
        return format_float(float(value), digits)
    return str(value)


def jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else value.numerator
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, (set, frozenset, tuple)):
        return list(value)
    if hasattr(value, "to_dict"):
        return value.to_dict()
    raise TypeError(f"{type(value).__name__} is not JSON serialisable")


def result_document(manifest: RunManifest, result: Mapping[str, Any]) -> dict[str, Any]:
    return {"manifest": manifest.model_dump(), "result": dict(result)}


def dump_json(document: Mapping[str, Any], stream: TextIO) -> None:
    json.dump(document, stream, indent=2, default=jsonable)
    stream.write("\n")


def write_json(path: str | Path, manifest: RunManifest, result: Mapping[str, Any]) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with target.open("w", encoding="utf-8") as handle:
        dump_json(result_document(manifest, result), handle)
    logger.info("wrote %s", target, extra={"event": "artifact"})
    return target


def write_csv(
    path: str | Path,
    header: Sequence[str],
    rows: Iterable[Sequence[Any]],
    digits: int = SIGNIFICANT_DIGITS,
) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with target.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(value, digits) for value in row])
    logger.info("wrote %s", target, extra={"event": "artifact"})
    return target


def read_csv(path: str | Path) -> list[dict[str, str]]:
    with Path(path).open("r", encoding="utf-8", newline="") as handle:
        return list(csv.DictReader(handle))


def artifact_paths(out: Optional[Path], stem: str) -> tuple[Optional[Path], Optional[Path]]:
    """``(json, csv)`` targets inside ``out``; both ``None`` when printing to stdout."""

    if out is None:
        return None, None
    return out / f"{stem}.json", out / f"{stem}.csv"


__all__ = [
    "SIGNIFICANT_DIGITS",
    "THRESHOLD_DECIMALS",
    "format_float",
    "threshold_digits",
    "jsonable",
    "result_document",
    "dump_json",
    "write_json",
    "write_csv",
    "read_csv",
    "artifact_paths",
]
