"""Ensemble parameters, design rate and stopping-set probability."""

from .params import EnsembleParams, SectionIndex, as_fraction
from .rate import design_rate, expected_purged_total, purged_expectation, purged_fraction, rate_from_purging
from .stopping import (
    FullyCoupledComparison,
    PStopRow,
    fully_coupled_equivalent,
    fully_coupled_sweep,
    p_stop,
    p_stop_one_d,
    pstop_sweep,
)

__all__ = [
    "EnsembleParams",
    "SectionIndex",
    "as_fraction",
    "design_rate",
    "purged_fraction",
    "purged_expectation",
    "expected_purged_total",
    "rate_from_purging",
    "p_stop",
    "p_stop_one_d",
    "FullyCoupledComparison",
    "fully_coupled_equivalent",
    "PStopRow",
    "pstop_sweep",
    "fully_coupled_sweep",
]
