"""Reference-scale reproductions; run with ``pytest -m slow``."""

from __future__ import annotations

import numpy as np
import pytest

from mdsc_ldpc.cli import load_table1, table1_params
from mdsc_ldpc.density import segment_symmetry_deviation
from mdsc_ldpc.ensemble import EnsembleParams
from mdsc_ldpc.finite import mc_pstop
from mdsc_ldpc.search import SearchSpace, optimize
from mdsc_ldpc.windowed import WindowSpec, compare_orders, profile_sweep, wc_threshold, worst_case_threshold

TABLE = load_table1()
ROWS = list(range(len(TABLE["rows"])))


def _row(index: int) -> tuple[EnsembleParams, WindowSpec, dict]:
    row = TABLE["rows"][index]
    p = table1_params(TABLE["common"], row)
    return p, WindowSpec(tuple(row["W"])).check(p), row


def test_table_resource_is_complete():
    assert len(ROWS) == 8
    for index in ROWS:
        p, spec, row = _row(index)
        assert spec.complexity == row["C"]
        low, high = row["bounds"]
        assert low <= min(spec.sizes) and max(spec.sizes) <= high


@pytest.mark.slow
@pytest.mark.parametrize("index", ROWS)
def test_table_worst_case_thresholds(index):
    p, spec, row = _row(index)
    assert worst_case_threshold(spec, p, 1e-12, 1e-5) == pytest.approx(row["worst"], abs=5e-4)


@pytest.mark.slow
@pytest.mark.parametrize("index", ROWS)
def test_table_chain_matches_worst_case(index):
    p, spec, _ = _row(index)
    worst = worst_case_threshold(spec, p, 1e-12, 1e-5)
    assert abs(wc_threshold(spec, p, None, 1e-12, 1e-5) - worst) <= 2e-4


@pytest.mark.slow
@pytest.mark.parametrize("L2", [3, 7, 9])
@pytest.mark.parametrize("gamma2", [2, 3])
@pytest.mark.parametrize("T", [0.05, 0.1])
@pytest.mark.parametrize("epsilon", [0.3, 0.45, 0.48])
def test_long_runs_match_reference_recursion(L2, gamma2, T, epsilon):
    p = EnsembleParams(dl=4, dr=8, L1=30, gamma1=2, L2=L2, gamma2=gamma2, T=T)
    assert segment_symmetry_deviation(p, epsilon, 1000) <= 1e-12


@pytest.mark.slow
def test_sampled_window_pairs_are_monotone(md_params):
    rng = np.random.default_rng(20240611)
    resolution = 1e-4
    for _ in range(20):
        larger = rng.integers(1, 5, size=3)
        smaller = np.maximum(larger - rng.integers(0, 3, size=3), 0)
        smaller[0] = max(smaller[0], 1)
        big, small = WindowSpec(tuple(larger)), WindowSpec(tuple(smaller))
        assert small.dominated_by(big)
        low = worst_case_threshold(small, md_params, 1e-12, resolution)
        high = worst_case_threshold(big, md_params, 1e-12, resolution)
        assert low <= high + 2 * resolution


@pytest.mark.slow
def test_natural_order_needs_fewest_iterations():
    p = EnsembleParams(dl=4, dr=8, L1=30, gamma1=2, L2=19, gamma2=2, T=0.05)
    spec = WindowSpec((5, 4, 3) + (0,) * 14 + (3, 4))
    points = compare_orders(p, spec, [0.35, 0.40, 0.43], seed=7)
    by_epsilon: dict[float, dict[str, float]] = {}
    for point in points:
        if point.succeeded:
            by_epsilon.setdefault(point.epsilon, {})[point.order] = point.average
    common = [eps for eps, averages in by_epsilon.items() if len(averages) == 3]
    assert common
    for eps in common:
        averages = by_epsilon[eps]
        assert averages["natural"] < averages["random"] < averages["reverse"]


@pytest.mark.slow
def test_sampler_follows_uniform_check_choice(worked_params):
    result = mc_pstop(worked_params, 8, trials=1_000_000, seed=99)
    assert result.sigma_distance(1 / 6) < 5
    assert result.sigma_distance(9 / 73) > 5


@pytest.mark.slow
def test_optimizer_recovers_reference_window():
    p, spec, row = _row(0)
    low, high = row["bounds"]
    report = optimize(SearchSpace(p.L2, row["C"], low, high), p, 1e-12, 1e-5)
    assert report.best_threshold == pytest.approx(row["worst"], abs=5e-4)
    reference = report.candidate(spec)
    assert reference is not None
    assert reference.threshold >= report.best_threshold - 1e-4


@pytest.mark.slow
def test_larger_budget_cuts_iterations_near_threshold():
    p = EnsembleParams(dl=4, dr=8, L1=30, gamma1=2, L2=9, gamma2=2, T=0.1)
    budget_36 = WindowSpec((5, 5, 4, 3, 2, 3, 4, 5, 5))
    budget_42 = WindowSpec((5, 5, 5, 5, 4, 4, 4, 5, 5))
    assert (budget_36.complexity, budget_42.complexity) == (36, 42)
    small = profile_sweep(p, budget_36, [0.30, 0.48])
    large = profile_sweep(p, budget_42, [0.30, 0.48])
    assert all(point.succeeded for point in small + large)

    easy_small, easy_large = small[0].average, large[0].average
    assert abs(easy_small - easy_large) <= 0.02 * max(easy_small, easy_large)

    reduction = 1.0 - large[1].average / small[1].average
    assert 0.25 <= reduction <= 0.45
