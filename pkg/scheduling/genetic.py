"""Genetic algorithm over integer (permutation) and binary (assignment) encodings.

Both variants share one generation loop: rank by fitness, keep the elite,
pick a mating pool by tournament, breed the rest of the next population.
Fitness is the evaluator objective with the solver's own execution time set
to zero; the measured wall-clock time is applied afterwards by callers.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from tasks.models import EvaluationContext, ProblemInstance, Schedule

from .baselines import fifo_order, sdf_order, stf_order
from .evaluator import evaluate, evaluate_population

logger = logging.getLogger("workbench.genetic")


class GAConfig(BaseModel):
    """Genetic algorithm settings. Defaults are the full labeling budget."""

    model_config = ConfigDict(frozen=True)

    population_size: int = Field(default=200, ge=2)
    generations: int = Field(default=500, ge=1)
    patience: int = Field(default=100, ge=1)
    mutation_probability: float = Field(default=0.3, ge=0.0, le=1.0)
    elitism_fraction: float = Field(default=0.05, gt=0.0, lt=1.0)
    parents_fraction: float = Field(default=0.30, gt=0.0, le=1.0)
    tournament_size: int = Field(default=3, ge=1)
    rng_seed: int = Field(default=0, ge=0, lt=2**64)

    @classmethod
    def preset(cls, name: Literal["full", "desk"], **overrides: object) -> "GAConfig":
        """``full``: 200/500/100. ``desk``: 60/120/40, for fast labeling."""
        base: Dict[str, object] = {}
        if name == "desk":
            base = {"population_size": 60, "generations": 120, "patience": 40}
        elif name != "full":
            raise ValueError(f"unknown GA preset {name!r}")
        base.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**base)

    def with_seed(self, seed: int) -> "GAConfig":
        return self.model_copy(update={"rng_seed": int(seed)})


@dataclass(frozen=True)
class GAResult:
    """Outcome of one GA run. ``history`` holds the best objective per generation."""

    best_schedule: Schedule
    best_objective: float
    generations_run: int
    wall_clock_seconds: float
    history: List[float] = field(default_factory=list)

    def to_dict(self) -> Dict[str, object]:
        return {
            "best_schedule": self.best_schedule.to_list(),
            "best_objective": self.best_objective,
            "generations_run": self.generations_run,
            "wall_clock_seconds": self.wall_clock_seconds,
        }


def _two_distinct(rng: np.random.Generator, high: int) -> tuple[int, int]:
    a = int(rng.integers(0, high))
    b = int(rng.integers(0, high - 1))
    if b >= a:
        b += 1
    return a, b


def _ox1(p1: list[int], p2: list[int], cut1: int, cut2: int) -> list[int]:
    n = len(p1)
    child = [-1] * n
    child[cut1:cut2] = p1[cut1:cut2]
    kept = set(child[cut1:cut2])
    fill = [g for g in (p2[(cut2 + k) % n] for k in range(n)) if g not in kept]
    for offset, gene in enumerate(fill):
        child[(cut2 + offset) % n] = gene
    return child


def ordered_crossover(p1: Schedule, p2: Schedule, cut1: int, cut2: int) -> Schedule:
    """OX1: keep ``p1[cut1:cut2]`` in place, fill the rest in ``p2``'s cyclic order from ``cut2``."""

    if p1.n != p2.n:
        raise ValueError("parents must have the same length")
    if not 0 <= cut1 < cut2 <= p1.n:
        raise ValueError(f"invalid cut points ({cut1}, {cut2}) for length {p1.n}")
    return Schedule.of(_ox1(p1.to_list(), p2.to_list(), cut1, cut2))


def swap_mutation(schedule: Schedule, rng: np.random.Generator, probability: float) -> Schedule:
    """With ``probability``, swap two distinct positions."""

    if schedule.n < 2 or rng.random() >= probability:
        return schedule
    order = schedule.order.copy()
    a, b = _two_distinct(rng, schedule.n)
    order[a], order[b] = order[b], order[a]
    return Schedule(order)


def repair_assignment(bits: np.ndarray, n: int) -> np.ndarray:
    """Restore a flat ``n*n`` chromosome to a permutation matrix.

    Walks the 1s row-major and keeps a 1 only if its row and column are both
    still free; tasks left without a position are then given the free
    positions in ascending order.
    """

    matrix = np.asarray(bits).reshape(n, n)
    rows, cols = np.nonzero(matrix)
    row_used = [False] * n
    col_used = [False] * n
    out = np.zeros((n, n), dtype=np.int8)
    for i, j in zip(rows.tolist(), cols.tolist()):
        if not row_used[i] and not col_used[j]:
            out[i, j] = 1
            row_used[i] = col_used[j] = True
    free_rows = [i for i in range(n) if not row_used[i]]
    free_cols = [j for j in range(n) if not col_used[j]]
    out[free_rows, free_cols] = 1
    return out.ravel()


def _seed_orders(instance: ProblemInstance, size: int, rng: np.random.Generator) -> np.ndarray:
    """STF, SDF and FIFO orders followed by random permutations."""

    seeds = [stf_order(instance).order, sdf_order(instance).order, fifo_order(instance).order]
    rows = seeds[:size]
    while len(rows) < size:
        rows.append(rng.permutation(instance.n))
    return np.array(rows, dtype=np.int64)


def _tournament(fitness: np.ndarray, rng: np.random.Generator, k: int) -> int:
    contenders = rng.integers(0, fitness.size, size=k)
    pick = np.lexsort((contenders, fitness[contenders]))[0]
    return int(contenders[pick])


def _trivial_result(instance: ProblemInstance, ctx: EvaluationContext, start: float) -> GAResult:
    schedule = fifo_order(instance)
    objective = evaluate(instance, schedule, ctx.without_exec_time()).objective
    return GAResult(schedule, objective, 0, time.perf_counter() - start, [objective])


def _evolve(
    instance: ProblemInstance,
    ctx: EvaluationContext,
    cfg: GAConfig,
    rng: np.random.Generator,
    population: np.ndarray,
    decode: Callable[[np.ndarray], np.ndarray],
    breed: Callable[[np.ndarray, np.ndarray], np.ndarray],
    start: float,
    label: str,
) -> GAResult:
    fitness_ctx = ctx.without_exec_time()
    size = population.shape[0]
    # at least one elite and at least one child per generation
    n_elite = min(max(1, int(round(cfg.elitism_fraction * size))), size - 1)
    n_parents = max(2, int(round(cfg.parents_fraction * size)))
    history: List[float] = []
    best_value = np.inf
    best_order: np.ndarray | None = None
    stale = 0
    generations_run = 0
    for generation in range(cfg.generations):
        orders = decode(population)
        fitness = evaluate_population(instance, orders, fitness_ctx)
        ranking = np.lexsort((np.arange(size), fitness))
        leader = int(ranking[0])
        if fitness[leader] < best_value:
            best_value = float(fitness[leader])
            best_order = orders[leader].copy()
            stale = 0
        else:
            stale += 1
        history.append(best_value)
        generations_run = generation + 1
        if stale >= cfg.patience or generations_run == cfg.generations:
            break
        elite = population[ranking[:n_elite]]
        pool = [_tournament(fitness, rng, cfg.tournament_size) for _ in range(n_parents)]
        children = []
        for _ in range(size - n_elite):
            a, b = _two_distinct(rng, n_parents)
            children.append(breed(population[pool[a]], population[pool[b]]))
        population = np.vstack([elite, np.array(children, dtype=population.dtype)])
    assert best_order is not None
    schedule = Schedule(best_order)
    objective = evaluate(instance, schedule, fitness_ctx).objective
    elapsed = time.perf_counter() - start
    logger.debug(
        "%s n=%d generations=%d objective=%.6f seconds=%.3f",
        label, instance.n, generations_run, objective, elapsed,
    )
    return GAResult(schedule, objective, generations_run, elapsed, history)


def run_ga_integer(
    instance: ProblemInstance, ctx: EvaluationContext, cfg: GAConfig | None = None
) -> GAResult:
    """GA over permutations of task indices (OX1 crossover, swap mutation)."""

    cfg = cfg or GAConfig()
    start = time.perf_counter()
    if instance.n == 1:
        return _trivial_result(instance, ctx, start)
    rng = np.random.default_rng(cfg.rng_seed)
    n = instance.n
    population = _seed_orders(instance, cfg.population_size, rng)

    def breed(p1: np.ndarray, p2: np.ndarray) -> np.ndarray:
        cut1, cut2 = sorted(_two_distinct(rng, n + 1))
        child = _ox1(p1.tolist(), p2.tolist(), cut1, cut2)
        if rng.random() < cfg.mutation_probability:
            a, b = _two_distinct(rng, n)
            child[a], child[b] = child[b], child[a]
        return np.asarray(child, dtype=np.int64)

    return _evolve(instance, ctx, cfg, rng, population, lambda pop: pop, breed, start, "ga-integer")


def run_ga_binary(
    instance: ProblemInstance, ctx: EvaluationContext, cfg: GAConfig | None = None
) -> GAResult:
    """GA over flattened ``N x N`` assignment matrices.

    Single-point crossover on the bit string, per-bit flips at rate ``1/N``
    when an offspring is selected for mutation, then :func:`repair_assignment`.
    """

    cfg = cfg or GAConfig()
    start = time.perf_counter()
    if instance.n == 1:
        return _trivial_result(instance, ctx, start)
    rng = np.random.default_rng(cfg.rng_seed)
    n = instance.n
    orders = _seed_orders(instance, cfg.population_size, rng)
    population = np.zeros((orders.shape[0], n, n), dtype=np.int8)
    population[np.arange(orders.shape[0])[:, None], orders, np.arange(n)[None, :]] = 1
    population = population.reshape(orders.shape[0], n * n)

    def decode(pop: np.ndarray) -> np.ndarray:
        return np.argmax(pop.reshape(-1, n, n), axis=1)

    def breed(p1: np.ndarray, p2: np.ndarray) -> np.ndarray:
        point = int(rng.integers(1, n * n))
        child = np.concatenate([p1[:point], p2[point:]])
        if rng.random() < cfg.mutation_probability:
            child = child ^ (rng.random(n * n) < 1.0 / n).astype(np.int8)
        return repair_assignment(child, n)

    return _evolve(instance, ctx, cfg, rng, population, decode, breed, start, "ga-binary")
