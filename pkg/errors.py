"""Exception types shared across the workbench."""

from __future__ import annotations


class WorkbenchError(Exception):
    """Base class for errors raised by the workbench."""


class InvalidInstanceError(WorkbenchError, ValueError):
    """A problem instance, schedule or assignment violates its invariants."""


class DatasetFormatError(WorkbenchError, ValueError):
    """A dataset line could not be parsed or failed validation."""

    def __init__(self, message: str, line_number: int | None = None) -> None:
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class CheckpointError(WorkbenchError, ValueError):
    """A model checkpoint is unreadable or incompatible."""


class TrainingDivergedError(WorkbenchError, RuntimeError):
    """Training produced a non-finite loss."""
