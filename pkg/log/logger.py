"""Logging helpers that tag records with the active run."""

from __future__ import annotations

import logging

_FORMAT = "%(asctime)s %(levelname)s %(name)s [%(run)s seed=%(seed)s] %(message)s"


class RunContextFilter(logging.Filter):
    """Stamp every record with the current run name and seed."""

    def __init__(self, run: str = "-", seed: int | str = "-") -> None:
        super().__init__()
        self.run = run
        self.seed = seed

    def filter(self, record: logging.LogRecord) -> bool:
        if not hasattr(record, "run"):
            record.run = self.run
        if not hasattr(record, "seed"):
            record.seed = self.seed
        return True


logger = logging.getLogger("workbench")
_context = RunContextFilter()


def set_run_context(run: str, seed: int | str) -> None:
    """Change the run name and seed attached to subsequent records."""

    _context.run = run
    _context.seed = seed


def current_run_context() -> tuple[str, int | str]:
    return _context.run, _context.seed


def configure_logging(level: str = "INFO") -> None:
    """Attach a stream handler with the run-aware format to ``workbench``."""

    logger.setLevel(level.upper())
    for handler in logger.handlers:
        if getattr(handler, "_workbench", False):
            handler.setLevel(level.upper())
            return
    handler = logging.StreamHandler()
    handler._workbench = True  # type: ignore[attr-defined]
    handler.addFilter(_context)
    handler.setFormatter(logging.Formatter(_FORMAT))
    logger.addHandler(handler)
