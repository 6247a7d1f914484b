"""JSON lines event log for training epochs and benchmark cells.

Each entry carries the wall-clock ``ts``, the event kind and the run name and
seed active in :mod:`log.logger`, followed by the event's own fields.
"""
from __future__ import annotations

import json
import time
from pathlib import Path
from typing import Any, Dict

import numpy as np

from .logger import current_run_context


def _jsonable(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"cannot record value of type {type(value).__name__}")


class EventRecorder:
    """Append run events to ``path``; ``fresh`` drops events from earlier runs."""

    def __init__(self, path: Path, fresh: bool = False) -> None:
        self.path = path
        self.path.parent.mkdir(parents=True, exist_ok=True)
        if fresh:
            self.path.write_text("", encoding="utf-8")

    def log(self, event: str, data: Dict[str, Any]) -> None:
        run, seed = current_run_context()
        entry = {"ts": time.time(), "event": event, "run": run, "seed": seed, **data}
        with self.path.open("a", encoding="utf-8") as f:
            f.write(json.dumps(entry, ensure_ascii=False, default=_jsonable) + "\n")
