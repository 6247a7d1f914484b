"""Heuristic schedulers and the exhaustive oracle.

Ties are always broken by the lower task index so results are reproducible.
"""
from __future__ import annotations

import logging
from itertools import permutations

import numpy as np

from errors import InvalidInstanceError
from tasks.models import EvaluationContext, ProblemInstance, Schedule

from .evaluator import EvaluationReport, evaluate, evaluate_population

logger = logging.getLogger("workbench.baselines")

DEFAULT_ORACLE_MAX_N = 8
_ORACLE_CHUNK = 40_320


def fifo_order(instance: ProblemInstance) -> Schedule:
    """Serve tasks in instance (arrival) order."""
    return Schedule(np.arange(instance.n))


def stf_order(instance: ProblemInstance) -> Schedule:
    """Shortest task first."""
    return Schedule(np.argsort(instance.processing_times, kind="stable"))


def sdf_order(instance: ProblemInstance) -> Schedule:
    """Shortest deadline first."""
    return Schedule(np.argsort(instance.deadlines, kind="stable"))


def brute_force_optimal(
    instance: ProblemInstance, ctx: EvaluationContext, max_n: int = DEFAULT_ORACLE_MAX_N
) -> tuple[Schedule, EvaluationReport]:
    """Enumerate all ``N!`` orders and return the best one.

    Permutations are generated in lexicographic order and the first minimum
    wins, so ties resolve to the lexicographically smallest order.
    """

    if instance.n > max_n:
        raise InvalidInstanceError(f"brute force is limited to {max_n} tasks, got {instance.n}")
    best_order: np.ndarray | None = None
    best_value = np.inf
    perms = permutations(range(instance.n))
    while True:
        chunk = np.array([p for _, p in zip(range(_ORACLE_CHUNK), perms)], dtype=np.int64)
        if chunk.size == 0:
            break
        values = evaluate_population(instance, chunk, ctx)
        idx = int(np.argmin(values))
        if values[idx] < best_value:
            best_value = float(values[idx])
            best_order = chunk[idx]
    assert best_order is not None
    schedule = Schedule(best_order)
    logger.debug("oracle n=%d objective=%.6f", instance.n, best_value)
    return schedule, evaluate(instance, schedule, ctx)
