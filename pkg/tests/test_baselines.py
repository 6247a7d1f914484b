from __future__ import annotations

from itertools import permutations

import numpy as np
import pytest

from errors import InvalidInstanceError
from scheduling import brute_force_optimal, evaluate, fifo_order, sdf_order, stf_order
from tasks import EvaluationContext, ProblemInstance, Schedule


def test_fifo() -> None:
    assert fifo_order(ProblemInstance.from_type_ids([4, 2, 7])).to_list() == [0, 1, 2]
    assert fifo_order(ProblemInstance.from_type_ids([5])).to_list() == [0]


def test_stf_sorts_stably() -> None:
    # types 6, 0, 3 have processing times 30, 10, 20
    assert stf_order(ProblemInstance.from_type_ids([6, 0, 3])).to_list() == [1, 2, 0]
    assert stf_order(ProblemInstance.from_type_ids([0, 1, 2])).to_list() == [0, 1, 2]
    assert stf_order(ProblemInstance.from_type_ids([0, 3, 6])).to_list() == [0, 1, 2]


def test_sdf_sorts_stably() -> None:
    # types 2, 0, 1 have deadlines 150, 50, 100
    assert sdf_order(ProblemInstance.from_type_ids([2, 0, 1])).to_list() == [1, 2, 0]
    assert sdf_order(ProblemInstance.from_type_ids([0, 3, 6])).to_list() == [0, 1, 2]


def test_oracle_two_task_case() -> None:
    schedule, report = brute_force_optimal(ProblemInstance.from_type_ids([6, 0]), EvaluationContext(lam=0.9))
    assert schedule.to_list() == [1, 0]
    assert report.objective == pytest.approx(0.0125)


def test_oracle_single_task_and_identical_tasks() -> None:
    ctx = EvaluationContext()
    schedule, report = brute_force_optimal(ProblemInstance.from_type_ids([3]), ctx)
    assert schedule.to_list() == [0]
    assert report.objective == evaluate(ProblemInstance.from_type_ids([3]), schedule, ctx).objective
    schedule, _ = brute_force_optimal(ProblemInstance.from_type_ids([4] * 6), ctx)
    assert schedule.to_list() == list(range(6))


def test_oracle_rejects_large_instances() -> None:
    with pytest.raises(InvalidInstanceError):
        brute_force_optimal(ProblemInstance.from_type_ids([0] * 9), EvaluationContext())


def test_oracle_beats_heuristics_and_matches_enumeration() -> None:
    rng = np.random.default_rng(17)
    ctx = EvaluationContext(lam=0.9)
    for _ in range(40):
        inst = ProblemInstance(rng.integers(0, 9, size=int(rng.integers(1, 7))))
        best, report = brute_force_optimal(inst, ctx)
        for heuristic in (fifo_order, stf_order, sdf_order):
            assert report.objective <= evaluate(inst, heuristic(inst), ctx).objective
        values = [evaluate(inst, Schedule.of(p), ctx).objective for p in permutations(range(inst.n))]
        assert report.objective == min(values)
        first = next(p for p, v in zip(permutations(range(inst.n)), values) if v == min(values))
        assert best.to_list() == list(first)


def test_heuristics_return_permutations() -> None:
    rng = np.random.default_rng(2)
    for _ in range(50):
        n = int(rng.integers(1, 40))
        inst = ProblemInstance(rng.integers(0, 9, size=n))
        for heuristic in (fifo_order, stf_order, sdf_order):
            assert sorted(heuristic(inst).to_list()) == list(range(n))
