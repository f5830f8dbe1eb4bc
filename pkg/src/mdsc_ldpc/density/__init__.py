"""Density evolution for the coupled ensemble on the erasure channel."""

from .constellation import DEFAULT_DELTA, CheckMessages, Constellation
from .engine import (
    AllBelow,
    DECaps,
    DEKernel,
    DEOutcome,
    SectionBelow,
    check_messages,
    cn_update,
    de_step,
    full_code_decodes,
    in_range_success,
    never,
    run_de,
    section_mask,
    vn_update,
)
from .reference import coupled_trajectory, de_1d_reference, segment_symmetry_deviation
from .threshold import ThresholdBracket, bisect_threshold, bp_threshold, bp_threshold_bracket

__all__ = [
    "DEFAULT_DELTA",
    "Constellation",
    "CheckMessages",
    "DECaps",
    "DEKernel",
    "DEOutcome",
    "AllBelow",
    "SectionBelow",
    "check_messages",
    "cn_update",
    "vn_update",
    "de_step",
    "in_range_success",
    "never",
    "run_de",
    "full_code_decodes",
    "section_mask",
    "de_1d_reference",
    "coupled_trajectory",
    "segment_symmetry_deviation",
    "ThresholdBracket",
    "bisect_threshold",
    "bp_threshold",
    "bp_threshold_bracket",
]
