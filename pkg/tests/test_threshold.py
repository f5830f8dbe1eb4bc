from __future__ import annotations

import math

import pytest

from mdsc_ldpc.density import bisect_threshold, bp_threshold, bp_threshold_bracket
from mdsc_ldpc.ensemble import EnsembleParams, design_rate
from mdsc_ldpc.exceptions import ParameterError


def test_bisection_brackets_a_step_function():
    bracket = bisect_threshold(lambda eps: eps < 0.3, resolution=1e-3)
    assert bracket.lower <= 0.3 <= bracket.upper
    assert bracket.width <= 1e-3
    assert bracket.probes == math.ceil(math.log2(1 / 1e-3))
    assert bracket.to_dict()["threshold"] == bracket.midpoint


def test_bisection_respects_given_bracket():
    bracket = bisect_threshold(lambda eps: eps < 0.47, resolution=1e-4, lower=0.4, upper=0.5)
    assert 0.4 <= bracket.lower <= 0.47 <= bracket.upper <= 0.5


@pytest.mark.parametrize("kwargs", [{"resolution": 0.0}, {"lower": 0.6, "upper": 0.5}, {"upper": 1.5}])
def test_bisection_rejects_bad_arguments(kwargs):
    with pytest.raises(ParameterError):
        bisect_threshold(lambda eps: True, **kwargs)


def test_uncoupled_regular_threshold():
    p = EnsembleParams(dl=3, dr=6, L1=1, gamma1=1)
    assert bp_threshold(p, resolution=1e-4) == pytest.approx(0.4294, abs=3e-4)


def test_coupled_threshold_independent_of_second_dimension():
    resolution = 1e-3
    one_d = EnsembleParams(dl=3, dr=6, L1=8, gamma1=2)
    md = EnsembleParams(dl=3, dr=6, L1=8, gamma1=2, L2=3, gamma2=2, T=0.1)
    assert abs(bp_threshold(md, resolution=resolution) - bp_threshold(one_d, resolution=resolution)) <= 2 * resolution


def test_threshold_below_capacity():
    p = EnsembleParams(dl=3, dr=6, L1=8, gamma1=2)
    bracket = bp_threshold_bracket(p, resolution=1e-3)
    assert bracket.midpoint <= 1 - float(design_rate(p)) + 1e-3
    assert bracket.midpoint > 0.4294 - 1e-3
