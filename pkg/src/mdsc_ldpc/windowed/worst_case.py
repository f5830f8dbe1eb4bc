"""Worst-case window configuration and the two windowed thresholds."""

from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from ..density import (
    Constellation,
    DECaps,
    DEKernel,
    DEOutcome,
    SectionBelow,
    ThresholdBracket,
    bisect_threshold,
    run_de,
)
from ..ensemble import EnsembleParams, SectionIndex
from ..exceptions import WindowDecodeFailure
from .decoder import DEFAULT_MAX_WINDOW_ITERS, decode_chain
from .spec import DecodeSchedule, WindowSpec

logger = logging.getLogger(__name__)

ORIGIN = SectionIndex(0, 0)


def worst_case_constellation(
    spec: WindowSpec,
    p: EnsembleParams,
    epsilon: float,
    delta: float = 1e-12,
) -> Constellation:
    """Semi-infinite chain truncated to the rows the window can read.

    Positions ``-(gamma1 - 1) .. -1`` are frozen at ``delta``; positions from 0
    on are 1, and only the window sections around the targeted ``(0, 0)`` move.
    """

    spec.check(p)
    i_min = -(p.gamma1 - 1)
    i_max = spec.max_size + p.gamma1 - 1
    shape = (i_max - i_min + 1, p.L2)
    values = np.ones(shape)
    frozen = np.ones(shape, dtype=bool)
    behind = -i_min
    values[:behind, :] = delta
    for r, size in enumerate(spec.sizes):
        frozen[behind : behind + size, r] = False
    return Constellation(values, frozen, i_min, epsilon, delta)


def worst_case_decodes(
    spec: WindowSpec,
    p: EnsembleParams,
    epsilon: float,
    delta: float = 1e-12,
    max_window_iters: int = DEFAULT_MAX_WINDOW_ITERS,
    *,
    tol_fp: float = 1e-10,
    kernel: Optional[DEKernel] = None,
) -> DEOutcome:
    start = worst_case_constellation(spec, p, epsilon, delta)
    success = SectionBelow.at(start, ORIGIN, delta)
    return run_de(start, p, None, success, DECaps(max_window_iters, tol_fp), kernel=kernel)


def worst_case_bracket(
    spec: WindowSpec,
    p: EnsembleParams,
    delta: float = 1e-12,
    resolution: float = 1e-5,
    max_window_iters: int = DEFAULT_MAX_WINDOW_ITERS,
    *,
    tol_fp: float = 1e-10,
    lower: float = 0.0,
    upper: float = 1.0,
) -> ThresholdBracket:
    spec.check(p)
    kernel = DEKernel(p)

    def probe(epsilon: float) -> bool:
        return worst_case_decodes(
            spec, p, epsilon, delta, max_window_iters, tol_fp=tol_fp, kernel=kernel
        ).converged

    return bisect_threshold(probe, resolution, lower, upper, label=str(spec))


def worst_case_threshold(
    spec: WindowSpec,
    p: EnsembleParams,
    delta: float = 1e-12,
    resolution: float = 1e-5,
    max_window_iters: int = DEFAULT_MAX_WINDOW_ITERS,
    *,
    tol_fp: float = 1e-10,
) -> float:
    return worst_case_bracket(spec, p, delta, resolution, max_window_iters, tol_fp=tol_fp).midpoint


def chain_decodes(
    spec: WindowSpec,
    p: EnsembleParams,
    schedule: DecodeSchedule,
    epsilon: float,
    delta: float = 1e-12,
    max_window_iters: int = DEFAULT_MAX_WINDOW_ITERS,
    *,
    tol_fp: float = 1e-10,
) -> bool:
    try:
        decode_chain(p, spec, schedule, epsilon, delta, max_window_iters, tol_fp=tol_fp)
    except WindowDecodeFailure as exc:
        logger.debug(
            "chain probe failed",
            extra={"event": "chain_failure", "epsilon": epsilon, "tvn": exc.tvn, "spec": str(spec)},
        )
        return False
    return True


def wc_bracket(
    spec: WindowSpec,
    p: EnsembleParams,
    schedule: Optional[DecodeSchedule] = None,
    delta: float = 1e-12,
    resolution: float = 1e-5,
    max_window_iters: int = DEFAULT_MAX_WINDOW_ITERS,
    *,
    tol_fp: float = 1e-10,
) -> ThresholdBracket:
    spec.check(p)
    schedule = schedule or DecodeSchedule.natural(p.L1, p.L2)

    def probe(epsilon: float) -> bool:
        return chain_decodes(spec, p, schedule, epsilon, delta, max_window_iters, tol_fp=tol_fp)

    return bisect_threshold(probe, resolution, label=f"{spec} {schedule.name}")


def wc_threshold(
    spec: WindowSpec,
    p: EnsembleParams,
    schedule: Optional[DecodeSchedule] = None,
    delta: float = 1e-12,
    resolution: float = 1e-5,
    max_window_iters: int = DEFAULT_MAX_WINDOW_ITERS,
    *,
    tol_fp: float = 1e-10,
) -> float:
    """Largest erasure probability at which every window of the chain reaches ``delta``."""

    return wc_bracket(spec, p, schedule, delta, resolution, max_window_iters, tol_fp=tol_fp).midpoint


__all__ = [
    "worst_case_constellation",
    "worst_case_decodes",
    "worst_case_bracket",
    "worst_case_threshold",
    "chain_decodes",
    "wc_bracket",
    "wc_threshold",
]
