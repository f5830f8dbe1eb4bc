from __future__ import annotations

import numpy as np
import pytest

from mdsc_ldpc.ensemble import EnsembleParams
from mdsc_ldpc.windowed import (
    DecodeSchedule,
    WindowSpec,
    decode_chain,
    wc_bracket,
    worst_case_bracket,
    worst_case_constellation,
    worst_case_decodes,
)

RESOLUTION = 1e-3


@pytest.fixture
def short_chain() -> EnsembleParams:
    return EnsembleParams(dl=4, dr=8, L1=8, gamma1=2, L2=2, gamma2=2, T=0.1)


def test_constellation_layout(md_params):
    c = worst_case_constellation(WindowSpec((3, 2, 0)), md_params, 0.47)
    assert c.values.shape == (6, 3)
    assert c.i_min == -1
    assert np.all(c.values[0] == c.delta)
    assert np.all(c.frozen[0])
    assert np.all(c.values[1:] == 1.0)
    assert np.all(c.frozen[:, 2])
    assert c.frozen[1:].sum() == 15 - 5


def test_zero_delta_leaves_a_known_boundary(md_params):
    c = worst_case_constellation(WindowSpec((2, 2, 2)), md_params, 0.47, delta=0.0)
    assert np.all(c.values[0] == 0.0)


def test_zero_erasure_decodes_in_one_iteration(md_params):
    outcome = worst_case_decodes(WindowSpec((2, 1, 1)), md_params, 0.0)
    assert outcome.converged
    assert outcome.iterations == 1


@pytest.mark.parametrize(
    "smaller,larger",
    [((2, 1, 1), (3, 2, 2)), ((2, 2, 2), (3, 3, 3)), ((3, 1, 2), (3, 2, 2))],
)
def test_larger_window_never_lowers_threshold(md_params, smaller, larger):
    low = worst_case_bracket(WindowSpec(smaller), md_params, resolution=RESOLUTION)
    high = worst_case_bracket(WindowSpec(larger), md_params, resolution=RESOLUTION)
    assert WindowSpec(smaller).dominated_by(WindowSpec(larger))
    assert low.midpoint <= high.midpoint + 2 * RESOLUTION


def test_uniform_window_ignores_second_dimension():
    base = EnsembleParams(dl=4, dr=8, L1=30, gamma1=2, L2=3, gamma2=2, T=0.05)
    spec = WindowSpec.uniform(3, 3)
    thresholds = [
        worst_case_bracket(spec, base.replace(gamma2=g2, T=T), resolution=RESOLUTION).midpoint
        for g2, T in ((2, 0.05), (3, 0.1), (2, 0))
    ]
    assert max(thresholds) - min(thresholds) <= 2 * RESOLUTION


def test_chain_threshold_at_least_worst_case(short_chain):
    spec = WindowSpec((3, 3))
    worst = worst_case_bracket(spec, short_chain, resolution=RESOLUTION)
    chain = wc_bracket(spec, short_chain, resolution=RESOLUTION)
    assert chain.midpoint >= worst.midpoint - 2 * RESOLUTION


def test_chain_windows_never_need_more_iterations_than_worst_case(short_chain):
    spec = WindowSpec((4, 4))
    epsilon = 0.3
    bound = worst_case_decodes(spec, short_chain, epsilon)
    assert bound.converged
    profile = decode_chain(short_chain, spec, DecodeSchedule.natural(8, 2), epsilon)
    assert max(profile.per_wc) <= bound.iterations
