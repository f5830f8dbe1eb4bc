from __future__ import annotations

from fractions import Fraction

import pytest

from mdsc_ldpc.ensemble import (
    EnsembleParams,
    fully_coupled_equivalent,
    fully_coupled_sweep,
    p_stop,
    p_stop_one_d,
    pstop_sweep,
)
from mdsc_ldpc.exceptions import EnumerationTooLarge, PreconditionViolated
from mdsc_ldpc.finite import socket_oracle


def test_worked_example(worked_params):
    assert p_stop(worked_params, 8) == Fraction(9, 73)


def test_full_density_mirrors_zero_density():
    p = EnsembleParams(dl=2, dr=4, L1=1, gamma1=1, L2=2, gamma2=2, T=1)
    assert p_stop(p, 8) == Fraction(9, 73)


def test_section_size_taken_from_params(worked_params):
    assert p_stop(worked_params.replace(M=8)) == Fraction(9, 73)


def test_zero_density_reduces_to_single_term():
    p = EnsembleParams(dl=4, dr=8, L1=30, gamma1=2, L2=3, gamma2=2, T=0)
    for M in (16, 64, 256):
        assert p_stop(p, M) == p_stop_one_d(p, M)


@pytest.mark.parametrize("gamma2", [2, 3])
@pytest.mark.parametrize("T", [Fraction(1, 20), Fraction(1, 10)])
def test_decreasing_in_section_size(md_params, gamma2, T):
    p = md_params.replace(gamma2=gamma2, T=T)
    values = [p_stop(p, M) for M in (64, 128, 256, 512, 1024, 2048, 4096)]
    assert all(later < earlier for earlier, later in zip(values, values[1:]))
    assert all(0 < v < 1 for v in values)


def test_more_coupling_lowers_probability():
    base = EnsembleParams(dl=4, dr=8, L1=30, gamma1=2, L2=3, gamma2=2, T=0.05)
    M = 256
    assert p_stop(base.replace(T=Fraction(1, 10)), M) < p_stop(base, M)
    assert p_stop(base.replace(gamma2=3), M) < p_stop(base, M)


def test_small_pool_is_a_precondition_failure(worked_params):
    with pytest.raises(PreconditionViolated):
        p_stop(worked_params, 4)


def test_sections_smaller_than_degree_rejected():
    p = EnsembleParams(dl=4, dr=8, L1=30, gamma1=1, L2=2, gamma2=2, T=0.5)
    with pytest.raises(PreconditionViolated):
        p_stop(p, 6)


@pytest.mark.parametrize(
    "params,M",
    [
        (EnsembleParams(dl=2, dr=4, L1=1, gamma1=1), 8),
        (EnsembleParams(dl=2, dr=4, L1=1, gamma1=1, L2=2, gamma2=2, T=1), 8),
        (EnsembleParams(dl=2, dr=4, L1=1, gamma1=1, L2=2, gamma2=2, T=Fraction(1, 2)), 8),
        (EnsembleParams(dl=2, dr=4, L1=2, gamma1=2, L2=3, gamma2=3, T=Fraction(1, 3)), 4),
        (EnsembleParams(dl=2, dr=4, L1=1, gamma1=1, L2=3, gamma2=2, T=Fraction(1, 4)), 12),
        (EnsembleParams(dl=3, dr=6, L1=1, gamma1=1, L2=2, gamma2=2, T=Fraction(1, 5)), 16),
    ],
)
def test_formula_matches_socket_enumeration(params, M):
    assert p_stop(params, M) == socket_oracle(params, M)


def test_oracle_worked_example(worked_params):
    assert socket_oracle(worked_params, 8) == Fraction(9, 73)


def test_oracle_refuses_large_pools(md_params):
    with pytest.raises(EnumerationTooLarge):
        socket_oracle(md_params, 256)


def test_fully_coupled_equivalent():
    p = EnsembleParams(dl=4, dr=8, L1=30, gamma1=2, L2=3, gamma2=2, T=0.1)
    comparison = fully_coupled_equivalent(p, 100)
    assert comparison.M_tilde == 300
    assert comparison.one_d.L2 == 1 and comparison.one_d.M == 300
    assert comparison.balanced.gamma2 == 3
    assert comparison.balanced.T == Fraction(2, 3)
    assert comparison.caption is not None and comparison.caption.T == 1


def test_fully_coupled_identity_for_single_segment():
    p = EnsembleParams(dl=4, dr=8, L1=30, gamma1=2)
    comparison = fully_coupled_equivalent(p, 100)
    assert comparison.M_tilde == 100


def test_caption_density_dropped_when_above_one():
    p = EnsembleParams(dl=4, dr=8, L1=30, gamma1=2, L2=7, gamma2=2, T=0.05)
    comparison = fully_coupled_equivalent(p, 64)
    assert comparison.caption is None
    assert comparison.balanced.T == Fraction(6, 7)


def test_sweep_rows(md_params):
    rows = list(pstop_sweep(md_params, [64, 128], [(2, Fraction(1, 20)), (3, Fraction(1, 10))]))
    assert [(r.M, r.gamma2) for r in rows] == [(64, 2), (64, 3), (128, 2), (128, 3)]
    assert rows[0].value == p_stop(md_params.replace(T=Fraction(1, 20)), 64)


def test_fully_coupled_sweep_labels(md_params):
    labels = [row.label for row in fully_coupled_sweep(md_params, [64])]
    assert labels[:2] == ["1D M", "1D M*L2"]
    assert labels[-2:] == ["fully coupled balanced", "fully coupled caption"]
