"""Range grammar shared by the sweeping subcommands.

A range is either a comma list (``0.3,0.4,0.46``), a single value, or
``start:stop:step`` with ``stop`` inclusive when it lies on the grid. A step
written ``xK`` multiplies instead of adding, so ``64:4096:x2`` gives
64, 128, ..., 4096.
"""

from __future__ import annotations

import math
from typing import Callable, TypeVar

from ..exceptions import UsageError

N = TypeVar("N", int, float)

MAX_POINTS = 100000
_EPS = 1e-9


def _number(text: str, kind: Callable[[str], N], source: str) -> N:
    try:
        return kind(text.strip())
    except ValueError:
        raise UsageError(f"bad number {text!r} in range {source!r}") from None


def _arithmetic(start: N, stop: N, step: N, source: str) -> list[N]:
    if step <= 0:
        raise UsageError(f"step must be positive in range {source!r}")
    if stop < start:
        raise UsageError(f"range {source!r} ends before it starts")
    count = int(math.floor((stop - start) / step + _EPS)) + 1
    if count > MAX_POINTS:
        raise UsageError(f"range {source!r} has more than {MAX_POINTS} points")
    if isinstance(start, int) and isinstance(step, int):
        return [start + k * step for k in range(count)]
    return [round(start + k * step, 12) for k in range(count)]


def _geometric(start: N, stop: N, factor: float, source: str, kind: Callable[[str], N]) -> list[N]:
    if factor <= 1:
        raise UsageError(f"geometric factor must exceed 1 in range {source!r}")
    if start <= 0:
        raise UsageError(f"geometric range {source!r} needs a positive start")
    if stop < start:
        raise UsageError(f"range {source!r} ends before it starts")
    values: list[N] = []
    current = float(start)
    while current <= stop * (1 + _EPS):
        value = int(round(current)) if kind is int else round(current, 12)
        if not values or value != values[-1]:
            values.append(value)
        if len(values) > MAX_POINTS:
            raise UsageError(f"range {source!r} has more than {MAX_POINTS} points")
        current *= factor
    return values


def parse_range(text: str, kind: Callable[[str], N] = float) -> list[N]:
    source = text.strip()
    if not source:
        raise UsageError("empty range")
    if ":" not in source:
        return [_number(part, kind, source) for part in source.split(",") if part.strip()]
    parts = source.split(":")
    if len(parts) != 3:
        raise UsageError(f"range {source!r} must look like start:stop:step")
    start = _number(parts[0], kind, source)
    stop = _number(parts[1], kind, source)
    step_text = parts[2].strip()
    if step_text[:1] in ("x", "X"):
        factor = _number(step_text[1:], float, source)
        return _geometric(start, stop, factor, source, kind)
    return _arithmetic(start, stop, _number(step_text, kind, source), source)


def int_range(text: str) -> list[int]:
    return parse_range(text, int)


def float_range(text: str) -> list[float]:
    return parse_range(text, float)


__all__ = ["MAX_POINTS", "parse_range", "int_range", "float_range"]
