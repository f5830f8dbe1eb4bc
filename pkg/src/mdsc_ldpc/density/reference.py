"""Segment-free 1D recursion used to cross-check the coupled engine."""

from __future__ import annotations

from typing import Optional

import numpy as np

from ..ensemble import EnsembleParams
from .constellation import Constellation
from .engine import DECaps, never, run_de


def de_1d_reference(
    dl: int,
    dr: int,
    L1: int,
    gamma1: int,
    epsilon: float,
    iterations: int,
) -> np.ndarray:
    """Trajectory of the 1D chain, row ``l`` holding x_i after ``l`` iterations.

    Plain loops over positions; reads outside ``[0, L1)`` are 0.
    """

    x = [1.0] * L1
    trajectory = [list(x)]
    cn_count = L1 + gamma1 - 1
    for _ in range(iterations):
        y = []
        for a in range(cn_count):
            total = 0.0
            for k in range(gamma1):
                pos = a - k
                if 0 <= pos < L1:
                    total += x[pos]
            avg = min(max(total / gamma1, 0.0), 1.0)
            y.append(1.0 - (1.0 - avg) ** (dr - 1))
        x = []
        for i in range(L1):
            total = 0.0
            for k in range(gamma1):
                total += y[i + k]
            avg = min(max(total / gamma1, 0.0), 1.0)
            x.append(epsilon * avg ** (dl - 1))
        trajectory.append(x)
    return np.asarray(trajectory, dtype=np.float64)


def coupled_trajectory(p: EnsembleParams, epsilon: float, iterations: int, delta: float = 1e-12) -> np.ndarray:
    """Full-code MD trajectory of shape ``(iterations + 1, L1, L2)``."""

    start = Constellation.full_code(p, epsilon, delta)
    frames = [start.values.copy()]

    def record(_: int, c: Constellation) -> None:
        frames.append(c.values.copy())

    run_de(start, p, None, never, DECaps(max_iterations=iterations, tol_fp=0.0), on_step=record)
    return np.stack(frames)


def segment_symmetry_deviation(
    p: EnsembleParams,
    epsilon: float,
    iterations: int,
    reference: Optional[np.ndarray] = None,
) -> float:
    """Largest |x_(i,j) - xbar_i| over all iterations, positions and segments."""

    if reference is None:
        reference = de_1d_reference(p.dl, p.dr, p.L1, p.gamma1, epsilon, iterations)
    coupled = coupled_trajectory(p, epsilon, iterations)
    return float(np.max(np.abs(coupled - reference[:, :, None])))


__all__ = ["de_1d_reference", "coupled_trajectory", "segment_symmetry_deviation"]
