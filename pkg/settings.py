"""Environment driven settings for the scheduling workbench.

Values are read from the process environment (optionally populated from a
``.env`` file) and validated with pydantic. Command line flags override them.
"""

from __future__ import annotations

import os
from pathlib import Path

from dotenv import load_dotenv
from pydantic import BaseModel, Field


class WorkbenchSettings(BaseModel):
    """Global knobs shared by every subcommand."""

    seed: int = Field(default=0, ge=0, lt=2**64)
    lam: float = Field(default=0.9, ge=0.0, le=1.0)
    time_unit_scale: float = Field(default=1.0, gt=0.0)
    log_level: str = "INFO"
    torch_threads: int = Field(default=1, ge=1)
    output_dir: Path = Path("runs")
    workers: int = Field(default=1, ge=1)


def load_settings(dotenv_path: Path | None = None) -> WorkbenchSettings:
    """Load ``.env`` (UTF-8) and build :class:`WorkbenchSettings`."""

    load_dotenv(dotenv_path=dotenv_path, encoding="utf-8")
    return WorkbenchSettings(
        seed=int(os.getenv("WORKBENCH_SEED", "0")),
        lam=float(os.getenv("WORKBENCH_LAMBDA", "0.9")),
        time_unit_scale=float(os.getenv("WORKBENCH_TIME_UNIT_SCALE", "1.0")),
        log_level=os.getenv("WORKBENCH_LOG_LEVEL", "INFO"),
        torch_threads=int(os.getenv("WORKBENCH_TORCH_THREADS", "1")),
        output_dir=Path(os.getenv("WORKBENCH_OUTPUT_DIR", "runs")),
        workers=int(os.getenv("WORKBENCH_WORKERS", "1")),
    )
