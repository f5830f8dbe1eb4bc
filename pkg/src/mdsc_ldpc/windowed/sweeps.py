"""Iteration-count sweeps over the erasure probability and processing order."""

from __future__ import annotations

import logging
import sys
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from tqdm import tqdm

from ..ensemble import EnsembleParams
from ..exceptions import WindowDecodeFailure
from .decoder import DEFAULT_MAX_WINDOW_ITERS, IterationProfile, decode_chain
from .spec import DecodeSchedule, WindowSpec
from .worst_case import worst_case_decodes

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepPoint:
    """Average iterations of one chain run, or where it failed."""

    epsilon: float
    order: str
    average: Optional[float]
    windows: int
    failed_at: Optional[tuple[int, int]] = None
    seed: Optional[int] = None

    @property
    def succeeded(self) -> bool:
        return self.failed_at is None

    def to_row(self) -> dict[str, object]:
        return {
            "epsilon": self.epsilon,
            "order": self.order,
            "seed": self.seed,
            "average": self.average,
            "windows": self.windows,
            "failed_at": None if self.failed_at is None else f"{self.failed_at[0]}:{self.failed_at[1]}",
        }


def _show_progress() -> bool:
    stream = getattr(sys, "stderr", None)
    return bool(stream and hasattr(stream, "isatty") and stream.isatty())


def run_point(
    p: EnsembleParams,
    spec: WindowSpec,
    schedule: DecodeSchedule,
    epsilon: float,
    delta: float = 1e-12,
    max_window_iters: int = DEFAULT_MAX_WINDOW_ITERS,
) -> tuple[SweepPoint, IterationProfile]:
    try:
        profile = decode_chain(p, spec, schedule, epsilon, delta, max_window_iters)
    except WindowDecodeFailure as exc:
        partial: IterationProfile = exc.profile
        point = SweepPoint(epsilon, schedule.name, None, len(partial.records), exc.tvn, schedule.seed)
        return point, partial
    point = SweepPoint(epsilon, schedule.name, profile.average, len(profile.records), None, schedule.seed)
    return point, profile


def profile_sweep(
    p: EnsembleParams,
    spec: WindowSpec,
    epsilons: Iterable[float],
    schedule: Optional[DecodeSchedule] = None,
    delta: float = 1e-12,
    max_window_iters: int = DEFAULT_MAX_WINDOW_ITERS,
) -> list[SweepPoint]:
    """Average iterations per window across a range of erasure probabilities."""

    schedule = schedule or DecodeSchedule.natural(p.L1, p.L2)
    values = list(epsilons)
    points = []
    for epsilon in tqdm(values, desc=f"profile {spec}", disable=not _show_progress()):
        point, _ = run_point(p, spec, schedule, epsilon, delta, max_window_iters)
        points.append(point)
    return points


def compare_orders(
    p: EnsembleParams,
    spec: WindowSpec,
    epsilons: Iterable[float],
    orders: Sequence[str] = ("natural", "reverse", "random"),
    seed: Optional[int] = None,
    delta: float = 1e-12,
    max_window_iters: int = DEFAULT_MAX_WINDOW_ITERS,
) -> list[SweepPoint]:
    """One sweep point per erasure probability and processing order."""

    schedules = [DecodeSchedule.for_params(p, name, seed) for name in orders]
    if seed is not None:
        logger.info("random processing order seeded", extra={"event": "orders", "seed": seed})
    values = list(epsilons)
    points = []
    for epsilon in tqdm(values, desc=f"orders {spec}", disable=not _show_progress()):
        for schedule in schedules:
            point, _ = run_point(p, spec, schedule, epsilon, delta, max_window_iters)
            points.append(point)
    return points


def worst_case_iterations(
    spec: WindowSpec,
    p: EnsembleParams,
    epsilon: float,
    delta: float = 1e-12,
    max_window_iters: int = DEFAULT_MAX_WINDOW_ITERS,
) -> Optional[int]:
    """Iterations the worst-case window needs to reach ``delta``; ``None`` if it cannot."""

    outcome = worst_case_decodes(spec, p, epsilon, delta, max_window_iters)
    return outcome.iterations if outcome.converged else None


__all__ = [
    "SweepPoint",
    "run_point",
    "profile_sweep",
    "compare_orders",
    "worst_case_iterations",
]
