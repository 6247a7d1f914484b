"""Task types, problem instances and schedules."""

from .catalog import DEFAULT_CATALOG, TaskCatalog, TaskType, catalog_default
from .models import (
    BinaryAssignment,
    EvaluationContext,
    ProblemInstance,
    Schedule,
    Task,
    matrix_from_schedule,
    schedule_from_matrix,
    schedule_from_types,
)

__all__ = [
    "BinaryAssignment",
    "DEFAULT_CATALOG",
    "EvaluationContext",
    "ProblemInstance",
    "Schedule",
    "Task",
    "TaskCatalog",
    "TaskType",
    "catalog_default",
    "matrix_from_schedule",
    "schedule_from_matrix",
    "schedule_from_types",
]
