"""Command line orchestration, benchmark harness and report writers."""

from .commands import cmd_bench, cmd_eval, cmd_gen_data, cmd_schedule, cmd_train
from .harness import BenchConfig, BenchmarkRow, run_benchmark, run_cell

__all__ = [
    "BenchConfig",
    "BenchmarkRow",
    "cmd_bench",
    "cmd_eval",
    "cmd_gen_data",
    "cmd_schedule",
    "cmd_train",
    "run_benchmark",
    "run_cell",
]
