"""Run logging: stdlib logger setup plus JSON lines event files."""

from .logger import configure_logging, logger, set_run_context
from .record import EventRecorder
from .replay import replay

__all__ = ["EventRecorder", "configure_logging", "logger", "replay", "set_run_context"]
