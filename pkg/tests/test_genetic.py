"""Tests for the permutation and assignment-matrix genetic algorithms."""

from __future__ import annotations

import numpy as np
import pytest

from scheduling import (
    GAConfig,
    brute_force_optimal,
    evaluate,
    fifo_order,
    ordered_crossover,
    repair_assignment,
    run_ga_binary,
    run_ga_integer,
    sdf_order,
    stf_order,
    swap_mutation,
)
from tasks import EvaluationContext, ProblemInstance, Schedule, schedule_from_matrix

CTX = EvaluationContext(lam=0.9)
SMALL = GAConfig.preset("desk", rng_seed=3)


def reference_ox1(p1: list[int], p2: list[int], a: int, b: int) -> list[int]:
    n = len(p1)
    child: list[int | None] = [None] * n
    child[a:b] = p1[a:b]
    segment = set(p1[a:b])
    donors = [g for g in p2[b:] + p2[:b] if g not in segment]
    slots = list(range(b, n)) + list(range(0, a))
    for slot, gene in zip(slots, donors):
        child[slot] = gene
    return child  # type: ignore[return-value]


def test_config_defaults_and_presets() -> None:
    cfg = GAConfig()
    assert (cfg.population_size, cfg.generations, cfg.patience) == (200, 500, 100)
    assert cfg.mutation_probability == 0.3 and cfg.tournament_size == 3
    desk = GAConfig.preset("desk", generations=None, patience=7)
    assert (desk.population_size, desk.generations, desk.patience) == (60, 120, 7)
    with pytest.raises(ValueError):
        GAConfig(population_size=1)
    with pytest.raises(ValueError):
        GAConfig(elitism_fraction=0)
    with pytest.raises(ValueError):
        GAConfig.preset("huge")  # type: ignore[arg-type]


def test_ordered_crossover_case() -> None:
    child = ordered_crossover(Schedule.of([0, 1, 2, 3, 4]), Schedule.of([4, 3, 2, 1, 0]), 1, 3)
    assert child.to_list() == [3, 1, 2, 0, 4]
    p = Schedule.of([2, 0, 3, 1])
    assert ordered_crossover(p, p, 0, 2) == p


def test_ordered_crossover_matches_reference() -> None:
    rng = np.random.default_rng(0)
    for _ in range(1000):
        n = int(rng.integers(2, 12))
        p1, p2 = rng.permutation(n).tolist(), rng.permutation(n).tolist()
        a, b = sorted(rng.choice(n + 1, size=2, replace=False).tolist())
        child = ordered_crossover(Schedule.of(p1), Schedule.of(p2), a, b)
        assert child.to_list() == reference_ox1(p1, p2, a, b)


def test_ordered_crossover_rejects_bad_input() -> None:
    with pytest.raises(ValueError):
        ordered_crossover(Schedule.of([0, 1]), Schedule.of([0, 1, 2]), 0, 1)
    with pytest.raises(ValueError):
        ordered_crossover(Schedule.of([0, 1, 2]), Schedule.of([2, 1, 0]), 2, 2)


def test_swap_mutation() -> None:
    rng = np.random.default_rng(1)
    s = Schedule.of([3, 0, 2, 1])
    for _ in range(20):
        assert swap_mutation(s, rng, 0.0) == s
    assert swap_mutation(Schedule.of([0, 1]), rng, 1.0).to_list() == [1, 0]
    for _ in range(50):
        out = swap_mutation(s, rng, 1.0)
        assert sorted(out.to_list()) == [0, 1, 2, 3]
        assert sum(a != b for a, b in zip(out.order, s.order)) == 2


def test_repair_cases() -> None:
    assert repair_assignment(np.ones(9, dtype=np.int8), 3).reshape(3, 3).tolist() == np.eye(3).tolist()
    assert repair_assignment(np.zeros(9, dtype=np.int8), 3).reshape(3, 3).tolist() == np.eye(3).tolist()
    bits = np.array([[0, 1, 1], [0, 1, 0], [0, 0, 0]], dtype=np.int8).ravel()
    assert repair_assignment(bits, 3).reshape(3, 3).tolist() == [[0, 1, 0], [1, 0, 0], [0, 0, 1]]


def test_repair_always_yields_permutation_matrix() -> None:
    rng = np.random.default_rng(4)
    for _ in range(300):
        n = int(rng.integers(1, 9))
        bits = (rng.random(n * n) < rng.random()).astype(np.int8)
        matrix = repair_assignment(bits, n).reshape(n, n)
        assert (matrix.sum(axis=0) == 1).all() and (matrix.sum(axis=1) == 1).all()
        schedule_from_matrix(matrix)


def test_single_task() -> None:
    inst = ProblemInstance.from_type_ids([5])
    for run in (run_ga_integer, run_ga_binary):
        result = run(inst, CTX, SMALL)
        assert result.best_schedule.to_list() == [0]
        assert result.best_objective == evaluate(inst, result.best_schedule, CTX).objective


def test_two_task_case() -> None:
    inst = ProblemInstance.from_type_ids([6, 0])
    assert run_ga_integer(inst, CTX, SMALL).best_schedule.to_list() == [1, 0]
    assert run_ga_binary(inst, CTX, SMALL).best_schedule.to_list() == [1, 0]


def test_runs_are_deterministic() -> None:
    inst = ProblemInstance(np.random.default_rng(8).integers(0, 9, size=9))
    for run in (run_ga_integer, run_ga_binary):
        a, b = run(inst, CTX, SMALL), run(inst, CTX, SMALL)
        assert a.best_schedule == b.best_schedule
        assert a.history == b.history
        assert a.generations_run == b.generations_run


def test_history_non_increasing_and_not_worse_than_heuristics() -> None:
    rng = np.random.default_rng(12)
    for _ in range(10):
        inst = ProblemInstance(rng.integers(0, 9, size=int(rng.integers(2, 15))))
        floor = min(evaluate(inst, h(inst), CTX).objective for h in (fifo_order, stf_order, sdf_order))
        for run in (run_ga_integer, run_ga_binary):
            result = run(inst, CTX, SMALL)
            assert all(b <= a for a, b in zip(result.history, result.history[1:]))
            assert len(result.history) == result.generations_run <= SMALL.generations
            assert result.best_objective <= floor
            assert result.best_objective == result.history[-1]


def test_fitness_ignores_exec_time() -> None:
    inst = ProblemInstance(np.random.default_rng(5).integers(0, 9, size=7))
    blind = run_ga_integer(inst, CTX, SMALL)
    timed = run_ga_integer(inst, CTX.with_exec_time(40), SMALL)
    assert blind.best_schedule == timed.best_schedule


@pytest.mark.parametrize(("size", "elitism"), [(10, 0.95), (2, 0.5), (3, 0.99)])
def test_large_elite_fraction_still_breeds(size: int, elitism: float) -> None:
    inst = ProblemInstance.from_type_ids([8, 0, 4, 2])
    cfg = GAConfig(population_size=size, generations=5, patience=10, elitism_fraction=elitism)
    floor = min(evaluate(inst, h(inst), CTX).objective for h in (stf_order, sdf_order))
    for run in (run_ga_integer, run_ga_binary):
        result = run(inst, CTX, cfg)
        assert sorted(result.best_schedule.to_list()) == [0, 1, 2, 3]
        assert result.generations_run == 5
        assert result.best_objective <= floor


def test_patience_stops_early() -> None:
    inst = ProblemInstance.from_type_ids([0, 0, 0, 0])
    result = run_ga_integer(inst, CTX, GAConfig.preset("desk", patience=3, rng_seed=1))
    assert result.generations_run == 4


def test_integer_ga_matches_oracle_on_small_instances() -> None:
    rng = np.random.default_rng(30)
    hits = 0
    for seed in range(20):
        inst = ProblemInstance(rng.integers(0, 9, size=int(rng.integers(1, 7))))
        _, best = brute_force_optimal(inst, CTX)
        hits += run_ga_integer(inst, CTX, SMALL.with_seed(seed)).best_objective == best.objective
    assert hits >= 18


@pytest.mark.slow
def test_integer_ga_matches_oracle_at_full_budget() -> None:
    rng = np.random.default_rng(99)
    cfg = GAConfig()
    hits = 0
    for seed in range(100):
        inst = ProblemInstance(rng.integers(0, 9, size=int(rng.integers(1, 9))))
        _, best = brute_force_optimal(inst, CTX)
        hits += run_ga_integer(inst, CTX, cfg.with_seed(seed)).best_objective == best.objective
    assert hits >= 95
