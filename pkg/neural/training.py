"""Minibatch training of :class:`~neural.model.PointerScheduler`.

The dataset is split once with a seeded shuffle into train, test and
validation parts (80/10/10 by default). Validation always uses sequential
decoding and the unweighted soft loss; the parameters from the epoch with
the lowest validation loss are returned.
"""
from __future__ import annotations

import copy
import logging
import time
from dataclasses import dataclass, field
from typing import List, Literal, Optional, Sequence, Tuple

import numpy as np
import torch
from pydantic import BaseModel, ConfigDict, Field, model_validator
from torch import Tensor

from dataset.generator import DatasetSample
from errors import TrainingDivergedError
from log.record import EventRecorder
from metrics.sequence import MetricsReport, compute_metrics

from .losses import soft_sequence_loss, weighted_soft_loss
from .model import ModelConfig, PointerScheduler
from .vocab import TASK_TOKEN_OFFSET

logger = logging.getLogger("workbench.training")


class TrainConfig(BaseModel):
    """Training hyperparameters; defaults follow the reference setup."""

    model_config = ConfigDict(frozen=True)

    batch_size: int = Field(default=128, ge=1)
    learning_rate: float = Field(default=0.001, gt=0.0)
    max_epochs: int = Field(default=20, ge=1)
    betas: Tuple[float, float] = (0.9, 0.999)
    eps: float = Field(default=1e-8, gt=0.0)
    train_fraction: float = Field(default=0.8, gt=0.0, le=1.0)
    test_fraction: float = Field(default=0.1, ge=0.0, lt=1.0)
    validation_fraction: float = Field(default=0.1, ge=0.0, lt=1.0)
    weighted_loss_enabled: bool = False
    weight_scheme: Literal["linear", "exponential"] = "linear"
    weight_decay_factor: float = Field(default=0.8, gt=0.0, le=1.0)
    teacher_forcing_enabled: bool = False
    patience: Optional[int] = Field(default=None, ge=1)
    rng_seed: int = Field(default=0, ge=0, lt=2**64)
    num_threads: int = Field(default=1, ge=1)
    model: ModelConfig = Field(default_factory=ModelConfig)

    @model_validator(mode="after")
    def _fractions_sum_to_one(self) -> "TrainConfig":
        total = self.train_fraction + self.test_fraction + self.validation_fraction
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"split fractions must sum to 1, got {total}")
        return self


@dataclass
class TrainReport:
    """Per-epoch losses and timings plus test-split metrics."""

    train_loss: List[float] = field(default_factory=list)
    val_loss: List[float] = field(default_factory=list)
    epoch_seconds: List[float] = field(default_factory=list)
    best_epoch: int = 0
    metrics: Optional[MetricsReport] = None


@dataclass(frozen=True)
class DatasetSplit:
    train: np.ndarray
    test: np.ndarray
    validation: np.ndarray


def split_dataset(count: int, cfg: TrainConfig) -> DatasetSplit:
    """Seeded shuffle, then consecutive train/test/validation slices."""

    order = np.random.default_rng(cfg.rng_seed).permutation(count)
    n_train = int(np.floor(cfg.train_fraction * count))
    n_test = int(np.floor(cfg.test_fraction * count))
    return DatasetSplit(order[:n_train], order[n_train : n_train + n_test], order[n_train + n_test :])


@dataclass(frozen=True)
class SampleTensors:
    tokens: Tensor
    targets: Tensor
    lengths: Tensor

    def __len__(self) -> int:
        return int(self.lengths.shape[0])

    def take(self, index: np.ndarray) -> "SampleTensors":
        idx = torch.as_tensor(index, dtype=torch.long)
        return SampleTensors(self.tokens[idx], self.targets[idx], self.lengths[idx])


def samples_to_tensors(samples: Sequence[DatasetSample]) -> SampleTensors:
    """Shift raw type ids to task tokens, keeping 0 for padding."""

    lengths = torch.tensor([s.actual_length for s in samples], dtype=torch.long)
    inputs = torch.tensor([s.input_seq for s in samples], dtype=torch.long)
    targets = torch.tensor([s.target_seq for s in samples], dtype=torch.long)
    valid = torch.arange(inputs.shape[1]).unsqueeze(0) < lengths.unsqueeze(1)
    return SampleTensors(
        torch.where(valid, inputs + TASK_TOKEN_OFFSET, 0),
        torch.where(valid, targets + TASK_TOKEN_OFFSET, 0),
        lengths,
    )


def _batches(data: SampleTensors, batch_size: int, order: np.ndarray | None = None):
    index = np.arange(len(data)) if order is None else order
    for start in range(0, index.size, batch_size):
        yield data.take(index[start : start + batch_size])


def batch_loss(model: PointerScheduler, batch: SampleTensors, cfg: TrainConfig, training: bool) -> Tensor:
    teacher = training and cfg.teacher_forcing_enabled
    out = model(batch.tokens, batch.lengths, batch.targets, teacher_forcing=teacher)
    if training and cfg.weighted_loss_enabled:
        return weighted_soft_loss(out.probs, batch.targets, batch.lengths, cfg.weight_scheme, cfg.weight_decay_factor)
    return soft_sequence_loss(out.probs, batch.targets, batch.lengths)


def evaluate_loss(model: PointerScheduler, data: SampleTensors, cfg: TrainConfig) -> float:
    """Sample-weighted mean unweighted soft loss under sequential decoding."""

    model.eval()
    total = 0.0
    with torch.no_grad():
        for batch in _batches(data, cfg.batch_size):
            total += batch_loss(model, batch, cfg, training=False).item() * len(batch)
    return total / len(data)


def predict(model: PointerScheduler, data: SampleTensors, batch_size: int = 512) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Probability rows, target classes and lengths as numpy arrays for metrics."""

    model.eval()
    probs, targets = [], []
    width = int(data.tokens.shape[1])
    with torch.no_grad():
        for batch in _batches(data, batch_size):
            rows = model(batch.tokens, batch.lengths).probs
            pad = width - rows.shape[1]
            if pad:
                rows = torch.nn.functional.pad(rows, (0, 0, 0, pad))
            probs.append(rows.numpy())
            targets.append((batch.targets - TASK_TOKEN_OFFSET).clamp(min=0).numpy())
    return np.concatenate(probs), np.concatenate(targets), data.lengths.numpy()


def evaluate_metrics(model: PointerScheduler, data: SampleTensors) -> MetricsReport:
    return compute_metrics(*predict(model, data))


def train(
    samples: Sequence[DatasetSample],
    cfg: TrainConfig | None = None,
    recorder: EventRecorder | None = None,
) -> Tuple[PointerScheduler, TrainReport]:
    """Train a fresh model on ``samples`` and return the best-validation parameters."""

    cfg = cfg or TrainConfig()
    if not samples:
        raise ValueError("cannot train on an empty dataset")
    torch.manual_seed(cfg.rng_seed)
    torch.set_num_threads(cfg.num_threads)
    data = samples_to_tensors(samples)
    split = split_dataset(len(data), cfg)
    if split.train.size == 0:
        raise ValueError("training split is empty; add samples or raise train_fraction")
    train_data = data.take(split.train)
    # Tiny datasets may have no validation rows; select on the training loss then.
    val_data = data.take(split.validation) if split.validation.size else train_data
    model = PointerScheduler(cfg.model, seed=cfg.rng_seed)
    optimizer = torch.optim.Adam(model.parameters(), lr=cfg.learning_rate, betas=cfg.betas, eps=cfg.eps)
    rng = np.random.default_rng(cfg.rng_seed)
    report = TrainReport()
    best_val = np.inf
    best_state = copy.deepcopy(model.state_dict())
    stale = 0
    logger.info(
        "training on %d samples (validation %d, test %d) for up to %d epochs",
        split.train.size, split.validation.size, split.test.size, cfg.max_epochs,
    )
    for epoch in range(1, cfg.max_epochs + 1):
        started = time.perf_counter()
        model.train()
        total = 0.0
        for batch in _batches(train_data, cfg.batch_size, rng.permutation(len(train_data))):
            loss = batch_loss(model, batch, cfg, training=True)
            if not torch.isfinite(loss):
                raise TrainingDivergedError(f"non-finite training loss at epoch {epoch}")
            optimizer.zero_grad()
            loss.backward()
            optimizer.step()
            total += loss.item() * len(batch)
        train_loss = total / len(train_data)
        val_loss = evaluate_loss(model, val_data, cfg)
        if not np.isfinite(val_loss):
            raise TrainingDivergedError(f"non-finite validation loss at epoch {epoch}")
        elapsed = time.perf_counter() - started
        report.train_loss.append(train_loss)
        report.val_loss.append(val_loss)
        report.epoch_seconds.append(elapsed)
        logger.info("epoch %d train_loss=%.4f val_loss=%.4f (%.1fs)", epoch, train_loss, val_loss, elapsed)
        if recorder is not None:
            recorder.log("epoch", {"epoch": epoch, "train_loss": train_loss, "val_loss": val_loss, "seconds": elapsed})
        if val_loss < best_val:
            best_val = val_loss
            best_state = copy.deepcopy(model.state_dict())
            report.best_epoch = epoch
            stale = 0
        else:
            stale += 1
            if cfg.patience is not None and stale >= cfg.patience:
                logger.info("no validation improvement for %d epochs, stopping", stale)
                break
    model.load_state_dict(best_state)
    model.eval()
    if split.test.size:
        report.metrics = evaluate_metrics(model, data.take(split.test))
    return model, report
