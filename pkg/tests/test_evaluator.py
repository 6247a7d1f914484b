from __future__ import annotations

import numpy as np
import pytest

from errors import InvalidInstanceError
from scheduling.evaluator import (
    drop_flags,
    evaluate,
    evaluate_population,
    position_of,
    waiting_times,
)
from tasks import (
    BinaryAssignment,
    EvaluationContext,
    ProblemInstance,
    Schedule,
    TaskCatalog,
    matrix_from_schedule,
)

WIDE = TaskCatalog.from_pairs([(10, 1000), (20, 1000), (30, 1000)])
IDENTITY_CASES = 10_000


def _random_cases(count: int, seed: int = 11):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(1, 15))
        inst = ProblemInstance(rng.integers(0, 9, size=n))
        yield inst, Schedule(rng.permutation(n)), rng


def test_waiting_time_cases() -> None:
    inst = ProblemInstance.from_type_ids([0, 1, 2], WIDE)
    assert waiting_times(inst, Schedule.of([0, 1, 2])).tolist() == [0, 10, 30]
    assert waiting_times(inst, Schedule.of([2, 0, 1])).tolist() == [30, 40, 0]
    assert waiting_times(ProblemInstance.from_type_ids([4]), Schedule.of([0])).tolist() == [0]


def test_drop_boundary_is_strict() -> None:
    late = ProblemInstance.from_type_ids([0, 1], TaskCatalog.from_pairs([(30, 1000), (30, 50)]))
    assert drop_flags(late, Schedule.of([0, 1]), EvaluationContext()).tolist() == [0, 1]
    edge = ProblemInstance.from_type_ids([0, 1], TaskCatalog.from_pairs([(30, 1000), (30, 60)]))
    assert drop_flags(edge, Schedule.of([0, 1]), EvaluationContext()).tolist() == [0, 0]
    timed = EvaluationContext(solver_exec_time=5)
    assert drop_flags(edge, Schedule.of([0, 1]), timed).tolist() == [0, 1]


def test_evaluate_no_drop_case() -> None:
    inst = ProblemInstance.from_type_ids([0, 1, 2], WIDE)
    report = evaluate(inst, Schedule.of([0, 1, 2]), EvaluationContext(lam=0.5))
    assert report.drop_ratio == 0
    assert report.avg_waiting == pytest.approx(40 / 180)
    assert report.objective == pytest.approx(0.1111, abs=1e-4)


def test_dropped_task_excluded_from_waiting() -> None:
    catalog = TaskCatalog.from_pairs([(10, 5), (20, 1000), (30, 1000)])
    inst = ProblemInstance.from_type_ids([1, 0, 2], catalog)
    report = evaluate(inst, Schedule.of([0, 1, 2]), EvaluationContext(lam=0.5))
    assert report.drop_flags.tolist() == [0, 1, 0]
    assert report.drop_ratio == pytest.approx(1 / 3)
    # task 1 waited 20 but is dropped; only task 2 (waited 30) counts
    assert report.avg_waiting == pytest.approx(30 / (3 * 60))


def test_two_task_case() -> None:
    inst = ProblemInstance.from_type_ids([6, 0])
    ctx = EvaluationContext(lam=0.9)
    assert evaluate(inst, Schedule.of([1, 0]), ctx).objective == pytest.approx(0.0125)
    assert evaluate(inst, Schedule.of([0, 1]), ctx).objective == pytest.approx(0.0375)


def test_position_of() -> None:
    assert position_of(BinaryAssignment(np.eye(3, dtype=int)), 0) == 1
    assert position_of(matrix_from_schedule(Schedule.of([1, 2, 0])), 0) == 3
    sched = Schedule.of([3, 0, 4, 2, 1])
    x = matrix_from_schedule(sched)
    for j, task in enumerate(sched.order, start=1):
        assert position_of(x, int(task)) == j


def test_telescoping_and_normalization() -> None:
    for inst, sched, _ in _random_cases(IDENTITY_CASES):
        t_w = waiting_times(inst, sched)
        order = sched.order
        for a, b in zip(order[:-1], order[1:]):
            assert t_w[b] - t_w[a] == inst.processing_times[a]
        report = evaluate(inst, sched, EvaluationContext())
        assert (report.normalized_waiting >= 0).all() and (report.normalized_waiting <= 1).all()
        assert 0 <= report.avg_waiting <= 1


def test_normalized_and_raw_waiting_forms_agree() -> None:
    for inst, sched, rng in _random_cases(IDENTITY_CASES, seed=3):
        ctx = EvaluationContext(lam=float(rng.random()))
        report = evaluate(inst, sched, ctx)
        per_task = (report.normalized_waiting * (1 - report.drop_flags)).sum() / inst.n
        assert per_task == pytest.approx(report.avg_waiting, rel=1e-12, abs=1e-15)


def test_encoding_equivalence_is_exact() -> None:
    for inst, sched, _ in _random_cases(IDENTITY_CASES, seed=5):
        ctx = EvaluationContext(lam=0.7)
        a = evaluate(inst, sched, ctx)
        b = evaluate(inst, matrix_from_schedule(sched), ctx)
        assert a.objective == b.objective
        assert np.array_equal(a.drop_flags, b.drop_flags)


def test_exec_time_never_reduces_drops() -> None:
    for inst, sched, _ in _random_cases(IDENTITY_CASES, seed=9):
        previous = drop_flags(inst, sched, EvaluationContext())
        for t_exe in (1, 5, 20, 100):
            current = drop_flags(inst, sched, EvaluationContext(solver_exec_time=t_exe))
            assert (current >= previous).all()
            previous = current


def test_population_matches_scalar_bit_for_bit() -> None:
    rng = np.random.default_rng(21)
    for _ in range(30):
        n = int(rng.integers(1, 12))
        inst = ProblemInstance(rng.integers(0, 9, size=n))
        orders = np.array([rng.permutation(n) for _ in range(16)])
        ctx = EvaluationContext(lam=float(rng.random()), solver_exec_time=float(rng.integers(0, 30)))
        batch = evaluate_population(inst, orders, ctx)
        scalar = [evaluate(inst, Schedule(row), ctx).objective for row in orders]
        assert batch.tolist() == scalar


def test_skip_dropped_frees_the_server() -> None:
    catalog = TaskCatalog.from_pairs([(10, 5), (20, 1000), (30, 1000)])
    inst = ProblemInstance.from_type_ids([2, 0, 1], catalog)
    literal = evaluate(inst, Schedule.of([0, 1, 2]), EvaluationContext())
    skipping = evaluate(inst, Schedule.of([0, 1, 2]), EvaluationContext(skip_dropped=True))
    assert literal.waiting_times.tolist() == [0, 30, 40]
    assert skipping.waiting_times.tolist() == [0, 30, 30]
    assert skipping.drop_flags.tolist() == [0, 1, 0]
    orders = np.array([[0, 1, 2], [1, 2, 0]])
    ctx = EvaluationContext(skip_dropped=True)
    assert evaluate_population(inst, orders, ctx).tolist() == [
        evaluate(inst, Schedule(row), ctx).objective for row in orders
    ]


def test_size_mismatch_rejected() -> None:
    inst = ProblemInstance.from_type_ids([0, 1, 2])
    with pytest.raises(InvalidInstanceError):
        evaluate(inst, Schedule.of([0, 1]), EvaluationContext())
