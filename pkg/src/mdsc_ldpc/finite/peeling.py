"""Peeling decoder on the erasure channel."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .graph import TannerGraph, make_rng


@dataclass(frozen=True)
class ErasurePattern:
    erased: frozenset[int]
    epsilon: Optional[float] = None
    seed: Optional[int] = None

    @classmethod
    def of(cls, vns: Iterable[int]) -> "ErasurePattern":
        return cls(frozenset(int(v) for v in vns))

    @classmethod
    def sample(cls, g: TannerGraph, epsilon: float, seed: int, stream: int = 0) -> "ErasurePattern":
        """Erase each VN independently with probability ``epsilon``."""

        rng = make_rng(seed, stream)
        hits = np.nonzero(rng.random(g.n_vn) < epsilon)[0]
        return cls(frozenset(int(v) for v in hits), float(epsilon), int(seed))


def peel(g: TannerGraph, e: ErasurePattern) -> frozenset[int]:
    """Resolve CNs with a single erased neighbour until none is left.

    The returned set is the largest stopping set inside ``e``; empty means the
    pattern decodes.
    """

    erased = set(e.erased)
    if not erased:
        return frozenset()
    pending = [0] * g.n_cn
    for v in erased:
        for c in g.vn_adj[v]:
            pending[c] += 1
    queue = deque(c for c, count in enumerate(pending) if count == 1)
    while queue:
        c = queue.popleft()
        if pending[c] != 1:
            continue
        v = next(u for u in g.cn_adj[c] if u in erased)
        erased.discard(v)
        for other in g.vn_adj[v]:
            pending[other] -= 1
            if pending[other] == 1:
                queue.append(other)
    return frozenset(erased)


def is_stopping_set(g: TannerGraph, vns: Iterable[int]) -> bool:
    """Every CN touching ``vns`` touches it at least twice."""

    members = set(vns)
    touches: dict[int, int] = {}
    for v in members:
        for c in g.vn_adj[v]:
            touches[c] = touches.get(c, 0) + 1
    return all(count >= 2 for count in touches.values())


def failure_rate(g: TannerGraph, epsilon: float, trials: int, seed: int) -> float:
    """Fraction of random erasure patterns that leave a non-empty residual."""

    failures = 0
    for trial in range(trials):
        residual = peel(g, ErasurePattern.sample(g, epsilon, seed, stream=trial + 1))
        if residual:
            if not is_stopping_set(g, residual):
                raise AssertionError("peeling left a set that is not a stopping set")
            failures += 1
    return failures / trials if trials else 0.0


__all__ = ["ErasurePattern", "peel", "is_stopping_set", "failure_rate"]
