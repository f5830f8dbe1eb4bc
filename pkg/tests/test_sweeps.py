from __future__ import annotations

from mdsc_ldpc.windowed import (
    DecodeSchedule,
    WindowSpec,
    compare_orders,
    profile_sweep,
    run_point,
    worst_case_iterations,
)

SPEC = WindowSpec((6, 6))


def test_profile_sweep_marks_failures(small_params):
    points = profile_sweep(small_params, SPEC, [0.0, 0.3, 0.9])
    assert [p.epsilon for p in points] == [0.0, 0.3, 0.9]
    assert points[0].average == 1.0 and points[0].succeeded
    assert points[1].succeeded and points[1].windows == 20
    assert points[2].failed_at == (0, 0)
    assert points[2].average is None
    assert points[2].to_row()["failed_at"] == "0:0"


def test_run_point_returns_partial_profile(small_params):
    point, profile = run_point(small_params, SPEC, DecodeSchedule.natural(10, 2), 0.9)
    assert not point.succeeded
    assert profile.records == []


def test_order_comparison(small_params):
    points = compare_orders(small_params, SPEC, [0.3, 0.35], seed=3)
    assert [(p.epsilon, p.order) for p in points] == [
        (0.3, "natural"),
        (0.3, "reverse"),
        (0.3, "random"),
        (0.35, "natural"),
        (0.35, "reverse"),
        (0.35, "random"),
    ]
    assert points[2].seed == 3
    assert all(p.succeeded for p in points)


def test_worst_case_iterations(small_params):
    assert worst_case_iterations(SPEC, small_params, 0.0) == 1
    assert worst_case_iterations(SPEC, small_params, 0.9) is None
