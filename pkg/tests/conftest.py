from __future__ import annotations

import logging
import sys
from fractions import Fraction
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
SRC_ROOT = ROOT / "src"
if str(SRC_ROOT) not in sys.path:
    sys.path.insert(0, str(SRC_ROOT))

from mdsc_ldpc.ensemble import EnsembleParams  # noqa: E402


@pytest.fixture(autouse=True)
def isolated_environment(tmp_path, monkeypatch):
    """Keep configuration and log files inside the test's temporary directory."""

    monkeypatch.setenv("MDSC_CONFIG", str(tmp_path / "config" / "mdsc_ldpc.yml"))
    monkeypatch.setenv("MDSC_LOG_FILE", str(tmp_path / "logs" / "mdsc_ldpc.log"))
    for name in ("MDSC_DEBUG", "MDSC_LOG_LEVEL", "MDSC_LOG_DIR"):
        monkeypatch.delenv(name, raising=False)
    yield
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
        handler.close()
    root.setLevel(logging.WARNING)
    logging.getLogger("mdsc_ldpc").setLevel(logging.NOTSET)


@pytest.fixture
def md_params() -> EnsembleParams:
    """The (4, 8) ensemble used throughout the reference table, three segments."""

    return EnsembleParams(dl=4, dr=8, L1=30, gamma1=2, L2=3, gamma2=2, T=Fraction(1, 10))


@pytest.fixture
def small_params() -> EnsembleParams:
    return EnsembleParams(dl=3, dr=6, L1=10, gamma1=2, L2=2, gamma2=2, T=Fraction(1, 10))


@pytest.fixture
def worked_params() -> EnsembleParams:
    """d_l=2, d_r=4, gamma1=1: four CNs per section at M=8."""

    return EnsembleParams(dl=2, dr=4, L1=1, gamma1=1)
