"""Execution-time-aware benchmark.

For every ``N`` the same random instances are handed to each scheduler. Each
call is timed; the resulting schedule is evaluated twice, once with no
solver time and once with the measured time (scaled to task units) added to
every task's completion. Schedulers never see the execution time.
"""
from __future__ import annotations

import logging
import statistics
import time
from dataclasses import asdict, dataclass
from typing import List, Sequence

import numpy as np
from pydantic import BaseModel, Field

from dataset.generator import instance_of_length
from log.record import EventRecorder
from scheduling.evaluator import evaluate
from scheduling.registry import Scheduler
from tasks.models import EvaluationContext

logger = logging.getLogger("workbench.bench")

DEFAULT_N_VALUES = (10, 20, 30, 40, 50)


class BenchConfig(BaseModel):
    n_values: List[int] = Field(default_factory=lambda: list(DEFAULT_N_VALUES))
    trials: int = Field(default=20, ge=1)
    seed: int = Field(default=0, ge=0, lt=2**64)
    lam: float = Field(default=0.9, ge=0.0, le=1.0)
    time_unit_scale: float = Field(default=1.0, gt=0.0)
    warmup: bool = True


@dataclass(frozen=True)
class BenchmarkRow:
    """Aggregates for one (scheduler, N) cell. ``exec_seconds`` is the median."""

    scheduler: str
    n: int
    drop_no_exec: float
    exec_seconds: float
    drop_with_exec: float
    mean_waiting: float
    trials: int
    exec_seconds_mean: float = 0.0


def run_cell(
    scheduler: Scheduler,
    n: int,
    instances: Sequence,
    ctx: EvaluationContext,
    warmup: bool = True,
) -> BenchmarkRow:
    """Time ``scheduler`` on each instance and aggregate both drop ratios."""

    blind = ctx.without_exec_time()
    if warmup:
        scheduler(instances[0], blind)
    seconds, drop_plain, drop_timed, waiting = [], [], [], []
    for instance in instances:
        started = time.perf_counter()
        schedule = scheduler(instance, blind)
        elapsed = time.perf_counter() - started
        plain = evaluate(instance, schedule, blind)
        timed = evaluate(instance, schedule, ctx.with_measured_time(elapsed))
        seconds.append(elapsed)
        drop_plain.append(plain.drop_ratio)
        drop_timed.append(timed.drop_ratio)
        waiting.append(timed.avg_waiting)
    return BenchmarkRow(
        scheduler=scheduler.name,
        n=n,
        drop_no_exec=float(np.mean(drop_plain)),
        exec_seconds=statistics.median(seconds),
        drop_with_exec=float(np.mean(drop_timed)),
        mean_waiting=float(np.mean(waiting)),
        trials=len(instances),
        exec_seconds_mean=float(np.mean(seconds)),
    )


def run_benchmark(
    schedulers: Sequence[Scheduler], cfg: BenchConfig, recorder: EventRecorder | None = None
) -> List[BenchmarkRow]:
    """One row per (scheduler, N), ``N`` outermost."""

    ctx = EvaluationContext(lam=cfg.lam, time_unit_scale=cfg.time_unit_scale)
    rows: List[BenchmarkRow] = []
    for n in cfg.n_values:
        if n < 1:
            raise ValueError(f"benchmark sizes must be positive, got {n}")
        rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, n]))
        instances = [instance_of_length(n, rng) for _ in range(cfg.trials)]
        for scheduler in schedulers:
            row = run_cell(scheduler, n, instances, ctx, cfg.warmup)
            logger.info(
                "%s n=%d drop=%.3f drop_exec=%.3f exec=%.4fs",
                row.scheduler, n, row.drop_no_exec, row.drop_with_exec, row.exec_seconds,
            )
            if recorder is not None:
                recorder.log("bench_cell", asdict(row))
            rows.append(row)
    return rows
