"""Read back events written by :class:`~log.record.EventRecorder`."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Dict, Iterator


def replay(path: Path, event: str | None = None) -> Iterator[Dict]:
    """Yield log entries from ``path``, optionally only those named ``event``."""

    with path.open("r", encoding="utf-8") as f:
        for line in f:
            if line.strip():
                data = json.loads(line)
                if event is None or data.get("event") == event:
                    yield data
