"""Evaluation, heuristic, exhaustive and genetic schedulers."""

from .baselines import brute_force_optimal, fifo_order, sdf_order, stf_order
from .evaluator import (
    EvaluationReport,
    drop_flags,
    evaluate,
    evaluate_population,
    position_of,
    waiting_times,
)
from .genetic import (
    GAConfig,
    GAResult,
    ordered_crossover,
    repair_assignment,
    run_ga_binary,
    run_ga_integer,
    swap_mutation,
)
from .registry import SCHEDULER_NAMES, Scheduler, build_scheduler, build_schedulers

__all__ = [
    "EvaluationReport",
    "GAConfig",
    "GAResult",
    "SCHEDULER_NAMES",
    "Scheduler",
    "brute_force_optimal",
    "build_scheduler",
    "build_schedulers",
    "drop_flags",
    "evaluate",
    "evaluate_population",
    "fifo_order",
    "ordered_crossover",
    "position_of",
    "repair_assignment",
    "run_ga_binary",
    "run_ga_integer",
    "sdf_order",
    "stf_order",
    "swap_mutation",
    "waiting_times",
]
