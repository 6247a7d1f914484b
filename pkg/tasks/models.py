"""Problem instances, schedules and the evaluation context.

All types are immutable once built. Schedules store the serving order ``x``
(``x[j]`` is the index of the task served at 0-based position ``j``); the
binary assignment matrix is an alternative view of the same permutation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from errors import InvalidInstanceError

from .catalog import DEFAULT_CATALOG, TaskCatalog


def _frozen(values: Sequence[float] | np.ndarray, dtype: type) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Task:
    """A typed task. ``arrival_time`` is informational only."""

    type_id: int
    processing_time: float
    deadline: float
    arrival_time: float = 0.0


@dataclass(frozen=True, eq=False)
class ProblemInstance:
    """A multiset of typed tasks to be ordered on a single server."""

    type_ids: np.ndarray
    catalog: TaskCatalog = DEFAULT_CATALOG
    arrival_times: np.ndarray | None = None
    processing_times: np.ndarray = field(init=False, repr=False)
    deadlines: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        ids = np.asarray(self.type_ids)
        if ids.ndim != 1 or ids.size == 0:
            raise InvalidInstanceError("a problem instance needs at least one task")
        if not np.issubdtype(ids.dtype, np.integer):
            raise InvalidInstanceError("task type ids must be integers")
        if ids.min() < 0 or ids.max() >= len(self.catalog):
            raise InvalidInstanceError(f"task type ids must lie in 0..{len(self.catalog) - 1}")
        tp = np.array([t.processing_time for t in self.catalog])
        td = np.array([t.deadline for t in self.catalog])
        object.__setattr__(self, "type_ids", _frozen(ids, np.int64))
        object.__setattr__(self, "processing_times", _frozen(tp[ids], np.float64))
        object.__setattr__(self, "deadlines", _frozen(td[ids], np.float64))
        if self.arrival_times is not None:
            arrivals = _frozen(self.arrival_times, np.float64)
            if arrivals.shape != ids.shape:
                raise InvalidInstanceError("arrival_times must match the number of tasks")
            object.__setattr__(self, "arrival_times", arrivals)

    @classmethod
    def from_type_ids(cls, type_ids: Sequence[int], catalog: TaskCatalog = DEFAULT_CATALOG) -> "ProblemInstance":
        return cls(np.asarray(list(type_ids), dtype=np.int64), catalog)

    @property
    def n(self) -> int:
        return int(self.type_ids.size)

    def __len__(self) -> int:
        return self.n

    @property
    def tasks(self) -> list[Task]:
        arrivals = self.arrival_times if self.arrival_times is not None else np.zeros(self.n)
        return [
            Task(int(t), float(p), float(d), float(a))
            for t, p, d, a in zip(self.type_ids, self.processing_times, self.deadlines, arrivals)
        ]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProblemInstance):
            return NotImplemented
        return self.catalog == other.catalog and np.array_equal(self.type_ids, other.type_ids)


@dataclass(frozen=True, eq=False)
class Schedule:
    """Serving order: ``order[j]`` is the task index served ``j``-th."""

    order: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.order)
        if arr.ndim != 1 or arr.size == 0:
            raise InvalidInstanceError("a schedule needs at least one position")
        if not np.array_equal(np.sort(arr), np.arange(arr.size)):
            raise InvalidInstanceError(f"schedule {arr.tolist()} is not a permutation of 0..{arr.size - 1}")
        object.__setattr__(self, "order", _frozen(arr, np.int64))

    @classmethod
    def of(cls, order: Sequence[int]) -> "Schedule":
        return cls(np.asarray(list(order), dtype=np.int64))

    @property
    def n(self) -> int:
        return int(self.order.size)

    def __len__(self) -> int:
        return self.n

    def positions(self) -> np.ndarray:
        """0-based serving position of each task index (``s_i - 1``)."""
        pos = np.empty_like(self.order)
        pos[self.order] = np.arange(self.n)
        return pos

    def to_list(self) -> list[int]:
        return [int(i) for i in self.order]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Schedule):
            return NotImplemented
        return np.array_equal(self.order, other.order)

    def __repr__(self) -> str:
        return f"Schedule({self.to_list()})"


@dataclass(frozen=True, eq=False)
class BinaryAssignment:
    """``X[i, j] == 1`` iff task ``i`` occupies serving position ``j``.

    Rows and columns must each sum to exactly one.
    """

    matrix: np.ndarray

    def __post_init__(self) -> None:
        x = np.asarray(self.matrix)
        if x.ndim != 2 or x.shape[0] != x.shape[1] or x.shape[0] == 0:
            raise InvalidInstanceError("assignment matrix must be square and non-empty")
        if not np.isin(x, (0, 1)).all():
            raise InvalidInstanceError("assignment matrix entries must be 0 or 1")
        if not ((x.sum(axis=0) == 1).all() and (x.sum(axis=1) == 1).all()):
            raise InvalidInstanceError("every row and column of the assignment must sum to 1")
        object.__setattr__(self, "matrix", _frozen(x, np.int8))

    @property
    def n(self) -> int:
        return int(self.matrix.shape[0])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryAssignment):
            return NotImplemented
        return np.array_equal(self.matrix, other.matrix)


@dataclass(frozen=True)
class EvaluationContext:
    """Objective weight and timing context for evaluating a schedule.

    ``solver_exec_time`` is already expressed in task time units; use
    :meth:`with_measured_time` to convert wall-clock seconds.
    """

    lam: float = 0.9
    t_cur: float = 0.0
    solver_exec_time: float = 0.0
    time_unit_scale: float = 1.0
    skip_dropped: bool = False

    def __post_init__(self) -> None:
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError(f"lambda must lie in [0, 1], got {self.lam}")
        if self.t_cur < 0 or self.solver_exec_time < 0:
            raise ValueError("t_cur and solver_exec_time must be non-negative")
        if self.time_unit_scale <= 0:
            raise ValueError("time_unit_scale must be positive")

    def with_exec_time(self, t_exe: float) -> "EvaluationContext":
        return EvaluationContext(self.lam, self.t_cur, t_exe, self.time_unit_scale, self.skip_dropped)

    def with_measured_time(self, seconds: float) -> "EvaluationContext":
        return self.with_exec_time(seconds * self.time_unit_scale)

    def without_exec_time(self) -> "EvaluationContext":
        return self.with_exec_time(0.0)


def schedule_from_matrix(assignment: BinaryAssignment | np.ndarray) -> Schedule:
    """Read the serving order off a permutation matrix.

    Raw arrays are validated first, so a chromosome that escaped repair is
    rejected with :class:`~errors.InvalidInstanceError`.
    """

    if not isinstance(assignment, BinaryAssignment):
        assignment = BinaryAssignment(np.asarray(assignment))
    return Schedule(np.argmax(assignment.matrix, axis=0).astype(np.int64))


def matrix_from_schedule(schedule: Schedule) -> BinaryAssignment:
    """Inverse of :func:`schedule_from_matrix`."""

    x = np.zeros((schedule.n, schedule.n), dtype=np.int8)
    x[schedule.order, np.arange(schedule.n)] = 1
    return BinaryAssignment(x)


def schedule_from_types(instance: ProblemInstance, type_sequence: Sequence[int]) -> Schedule:
    """Map a sequence of type ids onto task indices of ``instance``.

    Tasks sharing a type are consumed in ascending index order. The sequence
    must be a rearrangement of the instance's type multiset.
    """

    pending: dict[int, list[int]] = {}
    for idx in range(instance.n - 1, -1, -1):
        pending.setdefault(int(instance.type_ids[idx]), []).append(idx)
    if len(type_sequence) != instance.n:
        raise InvalidInstanceError("type sequence length does not match the instance")
    order = []
    for type_id in type_sequence:
        bucket = pending.get(int(type_id))
        if not bucket:
            raise InvalidInstanceError("type sequence is not a rearrangement of the instance")
        order.append(bucket.pop())
    return Schedule.of(order)
