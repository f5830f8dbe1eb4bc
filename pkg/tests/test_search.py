from __future__ import annotations

import pytest

from mdsc_ldpc.exceptions import EmptySpace, ParameterError
from mdsc_ldpc.search import SearchSpace, composition_count, enumerate_windows, optimize
from mdsc_ldpc.windowed import WindowSpec


def _sizes(space: SearchSpace) -> list[tuple[int, ...]]:
    return [spec.sizes for spec in enumerate_windows(space)]


def test_small_space_enumeration():
    assert _sizes(SearchSpace(2, 3, 1, 2)) == [(1, 2), (2, 1)]


def test_first_entry_is_at_least_one():
    sizes = _sizes(SearchSpace(3, 4, 0, 4))
    assert len(sizes) == 10
    assert all(s[0] >= 1 for s in sizes)
    assert composition_count(SearchSpace(3, 4, 0, 4)) == 10


def test_enumeration_is_unique_and_sorted():
    space = SearchSpace(9, 36, 2, 5)
    sizes = _sizes(space)
    assert len(sizes) == len(set(sizes)) == composition_count(space)
    assert sizes == sorted(sizes)
    assert all(sum(s) == 36 and min(s) >= 2 and max(s) <= 5 for s in sizes)
    assert all(space.contains(WindowSpec(s)) for s in sizes)


def test_tight_bounds_leave_one_vector():
    assert _sizes(SearchSpace(7, 28, 4, 4)) == [(4,) * 7]


def test_empty_space():
    space = SearchSpace(3, 2, 1, 5)
    assert space.is_empty()
    assert composition_count(space) == 0
    with pytest.raises(EmptySpace):
        list(enumerate_windows(space))


def test_invalid_space():
    with pytest.raises(ParameterError):
        SearchSpace(0, 3)
    with pytest.raises(ParameterError):
        SearchSpace(2, 3, -1)


@pytest.fixture
def space() -> SearchSpace:
    return SearchSpace(2, 8, 3, 5)


def test_optimizer_picks_the_largest_threshold(small_params, space):
    report = optimize(space, small_params, resolution=1e-2, coarse_resolution=5e-2)
    assert len(report.all) == 3
    assert report.best in [c.spec for c in report.all]
    assert all(report.best_threshold >= c.threshold for c in report.all if c.bracket.resolution == 1e-2)
    best = report.candidate(report.best)
    assert best is not None
    assert best.threshold >= report.best_threshold - 2 * 1e-2
    assert all(tie.sizes > report.best.sizes for tie in report.ties)
    assert report.to_dict()["evaluated"] == 3


def test_optimizer_is_deterministic(small_params, space):
    first = optimize(space, small_params, resolution=1e-2, coarse_resolution=5e-2)
    again = optimize(space, small_params, resolution=1e-2, coarse_resolution=5e-2, workers=2)
    assert first.best == again.best
    assert [c.to_row() for c in first.all] == [c.to_row() for c in again.all]
