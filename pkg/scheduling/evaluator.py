"""Waiting time, drop and objective computation for single-server schedules.

This is the one place the objective ``lam * D + (1 - lam) * w`` is defined;
the GA fitness, the brute-force oracle and the benchmark harness all call
into it.

The average waiting term is computed as ``sum(t_w * (1 - d)) / (N * sum(t_p))``.
Processing times are small integers, so the numerator is exact and the
scalar and vectorised paths agree bit for bit.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict

import numpy as np

from errors import InvalidInstanceError
from tasks.models import (
    BinaryAssignment,
    EvaluationContext,
    ProblemInstance,
    Schedule,
    schedule_from_matrix,
)


@dataclass(frozen=True, eq=False)
class EvaluationReport:
    """Per-task and aggregate results of serving an instance in one order.

    Per-task arrays are indexed by task index, not serving position.
    """

    waiting_times: np.ndarray
    normalized_waiting: np.ndarray
    drop_flags: np.ndarray
    drop_ratio: float
    avg_waiting: float
    objective: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "waiting_times": self.waiting_times.tolist(),
            "normalized_waiting": self.normalized_waiting.tolist(),
            "drop_flags": self.drop_flags.astype(int).tolist(),
            "drop_ratio": self.drop_ratio,
            "avg_waiting": self.avg_waiting,
            "objective": self.objective,
        }


def _as_schedule(schedule: Schedule | BinaryAssignment) -> Schedule:
    if isinstance(schedule, BinaryAssignment):
        return schedule_from_matrix(schedule)
    return schedule


def _check_sizes(instance: ProblemInstance, schedule: Schedule) -> None:
    if schedule.n != instance.n:
        raise InvalidInstanceError(
            f"schedule has {schedule.n} positions but the instance has {instance.n} tasks"
        )


def _serve(instance: ProblemInstance, schedule: Schedule, ctx: EvaluationContext) -> tuple[np.ndarray, np.ndarray]:
    """Return (waiting times, drop flags) indexed by task."""

    order = schedule.order
    tp = instance.processing_times[order]
    td = instance.deadlines[order]
    if not ctx.skip_dropped:
        waits = np.concatenate(([0.0], np.cumsum(tp)[:-1]))
        dropped = td < waits + tp + ctx.solver_exec_time
    else:
        waits = np.empty(order.size)
        dropped = np.zeros(order.size, dtype=bool)
        clock = 0.0
        for j in range(order.size):
            waits[j] = clock
            dropped[j] = td[j] < clock + tp[j] + ctx.solver_exec_time
            if not dropped[j]:
                clock += tp[j]
    t_w = np.empty(order.size)
    d = np.empty(order.size, dtype=bool)
    t_w[order] = waits
    d[order] = dropped
    return t_w, d


def waiting_times(instance: ProblemInstance, schedule: Schedule | BinaryAssignment) -> np.ndarray:
    """Waiting time of every task: the processing time of all earlier-served tasks.

    Dropped tasks still occupy the server for their successors.
    """

    schedule = _as_schedule(schedule)
    _check_sizes(instance, schedule)
    t_w, _ = _serve(instance, schedule, EvaluationContext())
    return t_w


def drop_flags(
    instance: ProblemInstance, schedule: Schedule | BinaryAssignment, ctx: EvaluationContext
) -> np.ndarray:
    """``d_i = 1`` iff ``t_d < t_w + t_p + t_exe`` (a task finishing on its deadline is served)."""

    schedule = _as_schedule(schedule)
    _check_sizes(instance, schedule)
    _, d = _serve(instance, schedule, ctx)
    return d.astype(np.int8)


def evaluate(
    instance: ProblemInstance, schedule: Schedule | BinaryAssignment, ctx: EvaluationContext
) -> EvaluationReport:
    """Evaluate ``schedule`` on ``instance`` under ``ctx``."""

    schedule = _as_schedule(schedule)
    _check_sizes(instance, schedule)
    total = float(instance.processing_times.sum())
    if total <= 0:
        raise InvalidInstanceError("total processing time must be positive")
    n = instance.n
    t_w, d = _serve(instance, schedule, ctx)
    served_wait = float((t_w * ~d).sum())
    drop_ratio = int(d.sum()) / n
    avg_waiting = served_wait / (n * total)
    return EvaluationReport(
        waiting_times=t_w,
        normalized_waiting=t_w / total,
        drop_flags=d.astype(np.int8),
        drop_ratio=drop_ratio,
        avg_waiting=avg_waiting,
        objective=ctx.lam * drop_ratio + (1.0 - ctx.lam) * avg_waiting,
    )


def evaluate_population(instance: ProblemInstance, orders: np.ndarray, ctx: EvaluationContext) -> np.ndarray:
    """Objective of every row of a ``(P, N)`` array of serving orders.

    Rows are assumed to be valid permutations; callers own that invariant.
    """

    orders = np.atleast_2d(orders)
    if orders.shape[1] != instance.n:
        raise InvalidInstanceError("population rows must have one entry per task")
    if ctx.skip_dropped:
        return np.array([evaluate(instance, Schedule(row), ctx).objective for row in orders])
    n = instance.n
    total = float(instance.processing_times.sum())
    tp = instance.processing_times[orders]
    td = instance.deadlines[orders]
    waits = np.cumsum(tp, axis=1) - tp
    dropped = td < waits + tp + ctx.solver_exec_time
    served_wait = (waits * ~dropped).sum(axis=1)
    drop_ratio = dropped.sum(axis=1) / n
    avg_waiting = served_wait / (n * total)
    return ctx.lam * drop_ratio + (1.0 - ctx.lam) * avg_waiting


def position_of(assignment: BinaryAssignment, task_index: int) -> int:
    """1-based serving position ``J_i = sum_j j * X[i, j]``."""

    row = assignment.matrix[task_index]
    return int((np.arange(1, assignment.n + 1) * row).sum())
