"""Brute-force socket counting for the size-2 stopping-set probability."""

from __future__ import annotations

import logging
from fractions import Fraction
from itertools import permutations
from math import comb

from ..ensemble import EnsembleParams
from ..exceptions import EnumerationTooLarge, PreconditionViolated

logger = logging.getLogger(__name__)

SIZE_FACTOR = 4


def _pool_counts(pool: int, shared: int, dr: int) -> tuple[int, int]:
    """Ordered non-parallel socket assignments of ``shared`` edges into ``pool`` CNs.

    CNs ``0 .. shared-1`` already carry one edge of the first VN and so offer
    ``dr - 1`` free sockets; the rest offer ``dr``. Returns the total count and
    the count whose CN set equals the first VN's.
    """

    total = 0
    matching = 0
    for choice in permutations(range(pool), shared):
        weight = 1
        for c in choice:
            weight *= dr - 1 if c < shared else dr
        total += weight
        if all(c < shared for c in choice):
            matching += weight
    return total, matching


def socket_oracle(p: EnsembleParams, M: int) -> Fraction:
    """Exact P_stop by enumerating every socket assignment of the second VN."""

    n_cn = p.cns_per_section(M)
    n0 = p.gamma1 * n_cn
    n1 = p.gamma1 * (p.gamma2 - 1) * n_cn
    limit = SIZE_FACTOR * p.dl
    if n0 > limit or (p.T > 0 and n1 > limit):
        raise EnumerationTooLarge(
            f"pool sizes n0={n0}, n1={n1} exceed the enumeration bound {limit}", n0=n0, n1=n1, limit=limit
        )
    if n0 <= p.dl:
        raise PreconditionViolated(f"gamma1*M*d_l/d_r = {n0} must exceed d_l = {p.dl}", n0=n0, dl=p.dl)
    if p.T > 0 and n1 < p.dl:
        raise PreconditionViolated(f"off-segment pool {n1} is smaller than d_l = {p.dl}", n1=n1, dl=p.dl)

    value = Fraction(0)
    for a in range(p.dl + 1):
        b = p.dl - a
        split = comb(p.dl, a) * (1 - p.T) ** a * p.T**b
        if not split:
            continue
        total_in, match_in = _pool_counts(n0, a, p.dr)
        total_off, match_off = _pool_counts(n1, b, p.dr)
        value += split * split * Fraction(match_in * match_off, total_in * total_off)
    logger.debug("socket oracle enumerated", extra={"event": "socket_oracle", "probe": M})
    return value


__all__ = ["socket_oracle", "SIZE_FACTOR"]
