"""Name based lookup of schedulers.

Every scheduler is a callable ``(instance, ctx) -> Schedule``. The benchmark
and ``schedule`` subcommands resolve user supplied names through here.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Protocol, Sequence

from tasks.models import EvaluationContext, ProblemInstance, Schedule

from .baselines import DEFAULT_ORACLE_MAX_N, brute_force_optimal, fifo_order, sdf_order, stf_order
from .genetic import GAConfig, run_ga_binary, run_ga_integer

HEURISTICS = ("fifo", "stf", "sdf")
BENCH_SCHEDULERS = ("fifo", "stf", "sdf", "ga-integer", "ga-binary", "pnt-net")
SCHEDULER_NAMES = BENCH_SCHEDULERS + ("brute-force",)


class Scheduler(Protocol):
    """Anything that orders a problem instance."""

    name: str

    def __call__(self, instance: ProblemInstance, ctx: EvaluationContext) -> Schedule:  # pragma: no cover - interface
        ...


@dataclass(frozen=True)
class NamedScheduler:
    """Adapter giving a plain function the :class:`Scheduler` interface."""

    name: str
    fn: Callable[[ProblemInstance, EvaluationContext], Schedule]

    def __call__(self, instance: ProblemInstance, ctx: EvaluationContext) -> Schedule:
        return self.fn(instance, ctx)


def build_scheduler(
    name: str,
    ga_config: GAConfig | None = None,
    neural: Scheduler | None = None,
    oracle_max_n: int = DEFAULT_ORACLE_MAX_N,
) -> Scheduler:
    """Resolve ``name`` to a scheduler.

    ``pnt-net`` needs a loaded neural scheduler passed as ``neural``.
    """

    ga_config = ga_config or GAConfig()
    table: Dict[str, Callable[[ProblemInstance, EvaluationContext], Schedule]] = {
        "fifo": lambda inst, ctx: fifo_order(inst),
        "stf": lambda inst, ctx: stf_order(inst),
        "sdf": lambda inst, ctx: sdf_order(inst),
        "ga-integer": lambda inst, ctx: run_ga_integer(inst, ctx, ga_config).best_schedule,
        "ga-binary": lambda inst, ctx: run_ga_binary(inst, ctx, ga_config).best_schedule,
        "brute-force": lambda inst, ctx: brute_force_optimal(inst, ctx, oracle_max_n)[0],
    }
    if name == "pnt-net":
        if neural is None:
            raise ValueError("scheduler 'pnt-net' needs a checkpoint")
        return neural
    if name not in table:
        raise ValueError(f"unknown scheduler {name!r}; choose from {', '.join(SCHEDULER_NAMES)}")
    return NamedScheduler(name, table[name])


def build_schedulers(
    names: Sequence[str], ga_config: GAConfig | None = None, neural: Scheduler | None = None
) -> list[Scheduler]:
    return [build_scheduler(name, ga_config, neural) for name in names]
