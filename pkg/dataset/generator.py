"""Synthetic supervised samples: random task-type sequences labeled by the GA.

Every sample draws from its own generator seeded with
``SeedSequence([generator_seed, index])``, so serial and parallel generation
produce the same samples in the same order.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Any, Dict, List, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from scheduling.baselines import brute_force_optimal
from scheduling.evaluator import evaluate
from scheduling.genetic import GAConfig, run_ga_integer
from tasks.catalog import DEFAULT_CATALOG, TYPE_COUNT, TaskCatalog
from tasks.models import EvaluationContext, ProblemInstance, schedule_from_types

logger = logging.getLogger("workbench.dataset")

MAX_LENGTH = 10
FORMAT_VERSION = 1
DATASET_PRESETS: Dict[str, int] = {"desk": 50_000, "set1": 307_290, "set2": 566_340}


def validate_sample(
    input_seq: Sequence[int],
    target_seq: Sequence[int],
    actual_length: int,
    max_length: int = MAX_LENGTH,
    type_count: int = TYPE_COUNT,
) -> None:
    """Raise ``ValueError`` if the triple breaks a sample invariant."""

    if isinstance(actual_length, bool) or not isinstance(actual_length, int):
        raise ValueError("len must be an integer")
    if not 1 <= actual_length <= max_length:
        raise ValueError(f"len {actual_length} outside 1..{max_length}")
    for name, seq in (("input", input_seq), ("target", target_seq)):
        if len(seq) != max_length:
            raise ValueError(f"{name} must have exactly {max_length} entries")
        if any(isinstance(v, bool) or not isinstance(v, int) for v in seq):
            raise ValueError(f"{name} entries must be integers")
        if any(not 0 <= v < type_count for v in seq):
            raise ValueError(f"{name} entries must lie in 0..{type_count - 1}")
        if any(v != 0 for v in seq[actual_length:]):
            raise ValueError(f"{name} padding beyond len must be 0")
    if sorted(input_seq[:actual_length]) != sorted(target_seq[:actual_length]):
        raise ValueError("target is not a rearrangement of input")


@dataclass(frozen=True)
class DatasetSample:
    """Padded input types, padded GA-ordered target types, and the real length."""

    input_seq: tuple[int, ...]
    target_seq: tuple[int, ...]
    actual_length: int

    def __post_init__(self) -> None:
        validate_sample(list(self.input_seq), list(self.target_seq), self.actual_length, len(self.input_seq))

    @property
    def input_types(self) -> list[int]:
        return list(self.input_seq[: self.actual_length])

    @property
    def target_types(self) -> list[int]:
        return list(self.target_seq[: self.actual_length])

    def instance(self, catalog: TaskCatalog = DEFAULT_CATALOG) -> ProblemInstance:
        return ProblemInstance.from_type_ids(self.input_types, catalog)

    def to_record(self) -> Dict[str, object]:
        return {"input": list(self.input_seq), "target": list(self.target_seq), "len": self.actual_length}


class DatasetManifest(BaseModel):
    """Provenance written next to every dataset file."""

    model_config = ConfigDict(populate_by_name=True)

    sample_count: int = Field(ge=0)
    max_length: int = MAX_LENGTH
    catalog: List[Dict[str, Any]] = Field(default_factory=DEFAULT_CATALOG.to_dict)
    ga_config: GAConfig = Field(default_factory=GAConfig)
    lam: float = Field(default=0.9, ge=0.0, le=1.0, alias="lambda")
    generator_seed: int = Field(default=0, ge=0, lt=2**64)
    format_version: int = FORMAT_VERSION
    preset: str = "desk"
    length_distribution: str = "uniform"


def _pad(values: Sequence[int], max_length: int) -> tuple[int, ...]:
    return tuple(int(v) for v in values) + (0,) * (max_length - len(values))


def random_type_ids(length: int, rng: np.random.Generator, type_count: int = TYPE_COUNT) -> np.ndarray:
    return rng.integers(0, type_count, size=length)


def random_instance(
    max_len: int, rng: np.random.Generator, catalog: TaskCatalog = DEFAULT_CATALOG
) -> ProblemInstance:
    """Length uniform on ``1..max_len``, types i.i.d. uniform over the catalog."""

    length = int(rng.integers(1, max_len + 1))
    return ProblemInstance(random_type_ids(length, rng, len(catalog)), catalog)


def instance_of_length(n: int, rng: np.random.Generator, catalog: TaskCatalog = DEFAULT_CATALOG) -> ProblemInstance:
    """Fixed-length instance; used by the benchmark for ``N`` beyond the dataset range."""
    return ProblemInstance(random_type_ids(n, rng, len(catalog)), catalog)


def label_with_ga(
    instance: ProblemInstance,
    ctx: EvaluationContext,
    ga_cfg: GAConfig,
    max_length: int = MAX_LENGTH,
) -> DatasetSample:
    """Order ``instance`` with the integer GA and pack it as a padded sample."""

    if instance.n > max_length:
        raise ValueError(f"instance has {instance.n} tasks, samples hold at most {max_length}")
    result = run_ga_integer(instance, ctx, ga_cfg)
    types = instance.type_ids.tolist()
    target = [types[i] for i in result.best_schedule.order]
    return DatasetSample(_pad(types, max_length), _pad(target, max_length), instance.n)


def sample_rng(generator_seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([generator_seed, index]))


def make_sample(
    index: int,
    generator_seed: int,
    ga_cfg: GAConfig,
    ctx: EvaluationContext,
    max_length: int = MAX_LENGTH,
) -> DatasetSample:
    rng = sample_rng(generator_seed, index)
    instance = random_instance(max_length, rng)
    cfg = ga_cfg.with_seed(int(rng.integers(0, 2**63)))
    return label_with_ga(instance, ctx, cfg, max_length)


def generate_samples(
    count: int,
    generator_seed: int,
    ga_cfg: GAConfig,
    ctx: EvaluationContext,
    max_length: int = MAX_LENGTH,
    workers: int = 1,
) -> List[DatasetSample]:
    """Generate ``count`` labeled samples, ordered by sample index."""

    build = partial(make_sample, generator_seed=generator_seed, ga_cfg=ga_cfg, ctx=ctx, max_length=max_length)
    if workers <= 1 or count < 2:
        samples = []
        for index in range(count):
            samples.append(build(index))
            if (index + 1) % 5000 == 0:
                logger.info("labeled %d/%d samples", index + 1, count)
        return samples
    chunksize = max(1, count // (workers * 16))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(build, range(count), chunksize=chunksize))


@dataclass(frozen=True)
class LabelAudit:
    """How many checked labels reach the brute-force optimum."""

    checked: int
    matched: int

    @property
    def fraction(self) -> float:
        return self.matched / self.checked if self.checked else 1.0


def audit_labels(
    samples: Sequence[DatasetSample],
    ctx: EvaluationContext,
    audit_size: int = 200,
    max_n: int = 8,
    tolerance: float = 1e-12,
) -> LabelAudit:
    """Compare GA targets against the oracle on up to ``audit_size`` samples with ``len <= max_n``."""

    ctx = ctx.without_exec_time()
    checked = matched = 0
    for sample in samples:
        if checked >= audit_size:
            break
        if sample.actual_length > max_n:
            continue
        instance = sample.instance()
        label = evaluate(instance, schedule_from_types(instance, sample.target_types), ctx).objective
        _, best = brute_force_optimal(instance, ctx, max_n)
        checked += 1
        matched += abs(label - best.objective) <= tolerance
    return LabelAudit(checked, matched)
