"""Design rate and expected CN purging of the coupled ensemble."""

from __future__ import annotations

from fractions import Fraction

from .params import EnsembleParams


def design_rate(p: EnsembleParams) -> Fraction:
    """Closed-form design rate; depends only on (d_l, d_r, L1, gamma1).

    R = 1 - (d_l/d_r) (1 + (gamma1 - 1 - 2 sum_{i<gamma1} (i/gamma1)^d_r) / L1)
    """

    edge_sum = sum((Fraction(i, p.gamma1) ** p.dr for i in range(p.gamma1)), Fraction(0))
    correction = (p.gamma1 - 1 - 2 * edge_sum) / p.L1
    return 1 - Fraction(p.dl, p.dr) * (1 + correction)


def purged_fraction(p: EnsembleParams, position: int) -> Fraction:
    """Probability that a CN at ``position`` has no neighbour among in-range VNs.

    Each CN socket picks one of the gamma1 VN positions ``position - k`` with
    equal weight in both the in-segment and the off-segment case, so only the
    count of out-of-range offsets matters.
    """

    outside = sum(1 for k in range(p.gamma1) if not 0 <= position - k < p.L1)
    return Fraction(outside, p.gamma1) ** p.dr


def purged_expectation(p: EnsembleParams, M: int, position: int) -> Fraction:
    """Expected number of purged CNs in one section at ``position``."""

    return p.cns_per_section(M) * purged_fraction(p, position)


def cn_positions(p: EnsembleParams) -> range:
    """CN positions that can receive an edge from an in-range VN."""

    return range(0, p.L1 + p.gamma1 - 1)


def expected_purged_total(p: EnsembleParams, M: int) -> Fraction:
    per_segment = sum((purged_expectation(p, M, pos) for pos in cn_positions(p)), Fraction(0))
    return per_segment * p.L2


def rate_from_purging(p: EnsembleParams, M: int) -> Fraction:
    """1 - (unpurged CNs)/(VNs), built from the per-section expectations."""

    total_cns = p.cns_per_section(M) * len(cn_positions(p)) * p.L2
    kept = total_cns - expected_purged_total(p, M)
    return 1 - kept / (M * p.L1 * p.L2)


__all__ = [
    "design_rate",
    "purged_fraction",
    "purged_expectation",
    "cn_positions",
    "expected_purged_total",
    "rate_from_purging",
]
