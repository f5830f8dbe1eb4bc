"""Exhaustive search for the window vector with the largest worst-case threshold.

Every candidate is bracketed coarsely first; the top fraction, plus any
candidate whose coarse bracket still overlaps the leader's, is then refined to
the requested resolution starting from its coarse bracket.
"""

from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from ..density import ThresholdBracket
from ..ensemble import EnsembleParams
from ..exceptions import EvaluationFailure, MdscError
from ..windowed import DEFAULT_MAX_WINDOW_ITERS, WindowSpec, worst_case_bracket
from .space import SearchSpace, enumerate_windows

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Candidate:
    spec: WindowSpec
    bracket: ThresholdBracket

    @property
    def threshold(self) -> float:
        return self.bracket.midpoint

    def to_row(self) -> dict[str, Any]:
        return {
            "W": str(self.spec),
            "C": self.spec.complexity,
            "threshold": self.threshold,
            "lower": self.bracket.lower,
            "upper": self.bracket.upper,
            "resolution": self.bracket.resolution,
        }


@dataclass
class SearchReport:
    best: WindowSpec
    best_threshold: float
    all: list[Candidate]
    ties: list[WindowSpec]
    space: SearchSpace
    resolution: float
    refined: int = 0
    duration_s: float = field(default=0.0, compare=False)

    def candidate(self, spec: WindowSpec) -> Optional[Candidate]:
        for cand in self.all:
            if cand.spec == spec:
                return cand
        return None

    def to_dict(self) -> dict[str, Any]:
        return {
            "best": list(self.best.sizes),
            "best_threshold": self.best_threshold,
            "ties": [list(spec.sizes) for spec in self.ties],
            "space": self.space.to_dict(),
            "resolution": self.resolution,
            "evaluated": len(self.all),
            "refined": self.refined,
        }


@dataclass(frozen=True)
class _Task:
    spec: WindowSpec
    params: EnsembleParams
    delta: float
    resolution: float
    max_window_iters: int
    lower: float = 0.0
    upper: float = 1.0


def _evaluate(task: _Task) -> Candidate:
    try:
        bracket = worst_case_bracket(
            task.spec,
            task.params,
            task.delta,
            task.resolution,
            task.max_window_iters,
            lower=task.lower,
            upper=task.upper,
        )
    except MdscError as exc:
        raise EvaluationFailure(
            f"evaluating W={task.spec} failed: {exc}", spec=task.spec.sizes, cause=exc.reason
        ) from exc
    except Exception as exc:  # pragma: no cover - unexpected numeric failures
        raise EvaluationFailure(f"evaluating W={task.spec} failed: {exc}", spec=task.spec.sizes) from exc
    return Candidate(task.spec, bracket)


def _run(tasks: Sequence[_Task], workers: int) -> list[Candidate]:
    if workers <= 1 or len(tasks) <= 1:
        return [_evaluate(task) for task in tasks]
    chunksize = max(1, len(tasks) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_evaluate, tasks, chunksize=chunksize))


def _ranked(candidates: Sequence[Candidate]) -> list[Candidate]:
    return sorted(candidates, key=lambda c: (-c.threshold, c.spec.sizes))


def optimize(
    space: SearchSpace,
    p: EnsembleParams,
    delta: float = 1e-12,
    resolution: float = 1e-5,
    *,
    coarse_resolution: float = 1e-3,
    refine_fraction: float = 0.1,
    tie_factor: float = 2.0,
    workers: int = 1,
    max_window_iters: int = DEFAULT_MAX_WINDOW_ITERS,
) -> SearchReport:
    """Evaluate every window vector of ``space`` and pick the best.

    Candidates within ``tie_factor * resolution`` of the top threshold are
    ties; the lexicographically smallest of them is reported as ``best``.
    """

    started = time.perf_counter()
    specs = list(enumerate_windows(space))
    for spec in specs:
        spec.check(p)
    coarse = max(coarse_resolution, resolution)
    logger.info(
        "evaluating %d window vectors", len(specs),
        extra={"event": "optimize_coarse", "spec": f"C={space.C}"},
    )
    first_pass = _run([_Task(s, p, delta, coarse, max_window_iters) for s in specs], workers)

    ranked = _ranked(first_pass)
    if coarse > resolution:
        keep = max(1, math.ceil(refine_fraction * len(ranked)))
        leader_lower = max(c.bracket.lower for c in ranked)
        chosen = {c.spec for c in ranked[:keep]}
        chosen.update(c.spec for c in ranked if c.bracket.upper >= leader_lower)
        refine_tasks = [
            _Task(c.spec, p, delta, resolution, max_window_iters, c.bracket.lower, c.bracket.upper)
            for c in ranked
            if c.spec in chosen
        ]
        logger.info(
            "refining %d of %d window vectors", len(refine_tasks), len(ranked),
            extra={"event": "optimize_fine"},
        )
        refined = {c.spec: c for c in _run(refine_tasks, workers)}
        final = [refined.get(c.spec, c) for c in ranked]
    else:
        refined = {c.spec: c for c in ranked}
        final = ranked

    final = _ranked(final)
    fine = [c for c in final if c.spec in refined]
    best_threshold = max(c.threshold for c in fine)
    tied = sorted(
        (c.spec for c in fine if c.threshold >= best_threshold - tie_factor * resolution),
        key=lambda s: s.sizes,
    )
    best = tied[0]
    report = SearchReport(
        best=best,
        best_threshold=best_threshold,
        all=final,
        ties=[s for s in tied if s != best],
        space=space,
        resolution=resolution,
        refined=len(refined),
        duration_s=time.perf_counter() - started,
    )
    logger.info(
        "best window vector %s", best,
        extra={"event": "optimize_done", "spec": str(best), "duration_ms": int(report.duration_s * 1000)},
    )
    return report


__all__ = ["Candidate", "SearchReport", "optimize"]
