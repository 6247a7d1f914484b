"""The fixed catalog of task types tasks are drawn from."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

PROCESSING_TIMES: tuple[float, ...] = (10.0, 20.0, 30.0)
DEADLINES: tuple[float, ...] = (50.0, 100.0, 150.0)
TYPE_COUNT = len(PROCESSING_TIMES) * len(DEADLINES)


@dataclass(frozen=True)
class TaskType:
    """A task class with a processing time and a relative deadline."""

    id: int
    processing_time: float
    deadline: float

    def __post_init__(self) -> None:
        if self.processing_time <= 0 or self.deadline <= 0:
            raise ValueError(f"task type {self.id} needs positive processing time and deadline")


@dataclass(frozen=True)
class TaskCatalog:
    """Ordered task types indexed by contiguous ids starting at 0."""

    entries: tuple[TaskType, ...]

    def __post_init__(self) -> None:
        ids = [t.id for t in self.entries]
        if ids != list(range(len(self.entries))):
            raise ValueError("catalog ids must be contiguous from 0")
        pairs = {(t.processing_time, t.deadline) for t in self.entries}
        if len(pairs) != len(self.entries):
            raise ValueError("catalog (processing_time, deadline) pairs must be distinct")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[TaskType]:
        return iter(self.entries)

    def __getitem__(self, type_id: int) -> TaskType:
        if not 0 <= type_id < len(self.entries):
            raise ValueError(f"unknown task type id {type_id}")
        return self.entries[type_id]

    def to_dict(self) -> list[dict]:
        return [
            {"id": t.id, "processing_time": t.processing_time, "deadline": t.deadline}
            for t in self.entries
        ]

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple[float, float]]) -> "TaskCatalog":
        return cls(tuple(TaskType(i, float(p), float(d)) for i, (p, d) in enumerate(pairs)))


def catalog_default() -> TaskCatalog:
    """Return the 9-type catalog, deadline varying fastest.

    Id 0 is ``(10, 50)``, id 1 is ``(10, 100)``, ..., id 8 is ``(30, 150)``.
    """

    return TaskCatalog.from_pairs(list(product(PROCESSING_TIMES, DEADLINES)))


DEFAULT_CATALOG = catalog_default()
