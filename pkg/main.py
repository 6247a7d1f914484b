"""Command line entry point for the edge task-scheduling workbench.

Subcommands:

- ``gen-data``  generate a GA-labeled dataset and audit it against the oracle
- ``train``     train the neural scheduler and write a checkpoint
- ``eval``      compute soft accuracy/precision/recall and weighted F1
- ``bench``     execution-time-aware comparison of every scheduler
- ``schedule``  order a single instance and print its evaluation

Exit codes: 0 on success, 2 on validation failure, 1 on runtime error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List

from bench.commands import cmd_bench, cmd_eval, cmd_gen_data, cmd_schedule, cmd_train
from dataset.generator import DATASET_PRESETS
from log.logger import configure_logging, set_run_context
from scheduling.registry import SCHEDULER_NAMES
from settings import WorkbenchSettings, load_settings

logger = logging.getLogger("workbench.cli")


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--seed", type=int, default=default, help="Random seed (u64)")
    parser.add_argument("--lambda", dest="lam", type=float, default=default, help="Drop-ratio weight in [0, 1]")
    parser.add_argument(
        "--time-unit-scale", type=float, default=default, help="Task time units per wall-clock second"
    )
    parser.add_argument("--log-level", default=default, help="Logging level")


def _ga_flags(parser: argparse.ArgumentParser, preset: str) -> None:
    parser.add_argument("--ga-preset", choices=["full", "desk"], default=preset, help="GA budget preset")
    parser.add_argument("--population", type=int, default=None, help="Override GA population size")
    parser.add_argument("--generations", type=int, default=None, help="Override GA generation count")
    parser.add_argument("--ga-patience", type=int, default=None, help="Override GA patience")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Edge task-scheduling workbench")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen-data", help="Generate a GA-labeled dataset")
    _global_flags(gen, suppress=True)
    gen.add_argument("--out", type=Path, required=True, help="Dataset file (JSON lines)")
    gen.add_argument("--count", type=int, default=None, help="Number of samples (overrides --preset)")
    gen.add_argument("--preset", choices=sorted(DATASET_PRESETS), default="desk", help="Dataset size preset")
    gen.add_argument("--workers", type=int, default=None, help="Labeling processes")
    gen.add_argument("--audit-size", type=int, default=200, help="Number of samples checked against the oracle")
    _ga_flags(gen, "desk")
    gen.set_defaults(handler=cmd_gen_data)

    tr = sub.add_parser("train", help="Train the neural scheduler")
    _global_flags(tr, suppress=True)
    tr.add_argument("--dataset", type=Path, required=True)
    tr.add_argument("--out", type=Path, required=True, help="Checkpoint file (JSON)")
    tr.add_argument("--batch-size", type=int, default=128)
    tr.add_argument("--learning-rate", type=float, default=0.001)
    tr.add_argument("--epochs", type=int, default=20)
    tr.add_argument("--embed-dim", type=int, default=128)
    tr.add_argument("--hidden-size", type=int, default=128)
    tr.add_argument("--weighted-loss", action="store_true", help="Train on the position-weighted loss")
    tr.add_argument("--weight-scheme", choices=["linear", "exponential"], default="linear")
    tr.add_argument("--teacher-forcing", action="store_true")
    tr.add_argument("--patience", type=int, default=None, help="Stop after this many epochs without improvement")
    tr.set_defaults(handler=cmd_train)

    ev = sub.add_parser("eval", help="Evaluate a checkpoint on the test split")
    _global_flags(ev, suppress=True)
    ev.add_argument("--dataset", type=Path, required=True)
    ev.add_argument("--checkpoint", type=Path, required=True)
    ev.add_argument("--out", type=Path, default=None, help="Metrics CSV (default next to the checkpoint)")
    ev.set_defaults(handler=cmd_eval)

    be = sub.add_parser("bench", help="Execution-time-aware benchmark")
    _global_flags(be, suppress=True)
    be.add_argument("--checkpoint", type=Path, default=None, help="Checkpoint for pnt-net")
    be.add_argument("--n-values", default="10,20,30,40,50", help="Comma separated task counts")
    be.add_argument("--trials", type=int, default=20)
    be.add_argument("--schedulers", default=None, help="Comma separated scheduler names")
    be.add_argument("--out-dir", type=Path, default=None)
    _ga_flags(be, "full")
    be.set_defaults(handler=cmd_bench)

    sc = sub.add_parser("schedule", help="Schedule a single instance")
    _global_flags(sc, suppress=True)
    sc.add_argument("tasks", help="Task type ids, e.g. '0,1,2'")
    sc.add_argument("--scheduler", choices=SCHEDULER_NAMES, default="fifo")
    sc.add_argument("--checkpoint", type=Path, default=None)
    sc.add_argument("--json", action="store_true", help="Print JSON instead of text")
    _ga_flags(sc, "full")
    sc.set_defaults(handler=cmd_schedule)
    return parser


def _resolve_settings(base: WorkbenchSettings, args: argparse.Namespace) -> WorkbenchSettings:
    overrides = {
        key: getattr(args, key)
        for key in ("seed", "lam", "time_unit_scale", "log_level")
        if getattr(args, key, None) is not None
    }
    return WorkbenchSettings(**{**base.model_dump(), **overrides})


def main(argv: List[str] | None = None) -> int:
    """Parse arguments, run a subcommand and return its exit code."""

    args = build_parser().parse_args(argv)
    try:
        settings = _resolve_settings(load_settings(), args)
        configure_logging(settings.log_level)
        set_run_context(args.command, settings.seed)
        return args.handler(args, settings)
    except ValueError as exc:
        logger.error("%s", exc)
        return 2
    except Exception:  # pragma: no cover - reported and mapped to exit code 1
        logger.exception("%s failed", args.command)
        return 1


if __name__ == "__main__":
    sys.exit(main())
