"""Parameter ingestion, range grammar and result artifacts."""

from .models import EnsembleParamsModel, RunManifest
from .params import load_params, params_from_mapping, save_params
from .sweep import MAX_POINTS, float_range, int_range, parse_range
from .writers import (
    SIGNIFICANT_DIGITS,
    THRESHOLD_DECIMALS,
    artifact_paths,
    dump_json,
    format_float,
    jsonable,
    read_csv,
    result_document,
    threshold_digits,
    write_csv,
    write_json,
)

__all__ = [
    "EnsembleParamsModel",
    "RunManifest",
    "load_params",
    "save_params",
    "params_from_mapping",
    "MAX_POINTS",
    "parse_range",
    "int_range",
    "float_range",
    "SIGNIFICANT_DIGITS",
    "THRESHOLD_DECIMALS",
    "format_float",
    "threshold_digits",
    "jsonable",
    "result_document",
    "dump_json",
    "write_json",
    "write_csv",
    "read_csv",
    "artifact_paths",
]
