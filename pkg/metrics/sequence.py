"""Soft and hard sequence-quality metrics.

Batches are given as ``probs`` of shape ``(M, L, C)``, integer class
``targets`` of shape ``(M, L)`` and ``lengths`` of shape ``(M,)``. Positions
at or beyond a sequence's length are ignored, whatever they contain.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

DEFAULT_EPSILON = 1e-9


@dataclass(frozen=True)
class MetricsReport:
    """The four headline metrics plus per-class detail."""

    avg_soft_accuracy: float
    avg_soft_precision: float
    avg_soft_recall: float
    weighted_f1: float
    per_class_f1: Tuple[float, ...]
    epsilon: float = DEFAULT_EPSILON

    def to_row(self) -> Dict[str, float]:
        return {
            "weighted_f1": self.weighted_f1,
            "avg_soft_accuracy": self.avg_soft_accuracy,
            "avg_soft_precision": self.avg_soft_precision,
            "avg_soft_recall": self.avg_soft_recall,
        }


def _prepare(probs: np.ndarray, targets: np.ndarray, lengths: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    probs = np.asarray(probs, dtype=np.float64)
    targets = np.asarray(targets, dtype=np.int64)
    lengths = np.asarray(lengths, dtype=np.int64)
    if probs.ndim != 3 or probs.shape[0] == 0:
        raise ValueError("metrics need a non-empty (M, L, C) batch of probability rows")
    if targets.shape != probs.shape[:2] or lengths.shape != (probs.shape[0],):
        raise ValueError("targets must be (M, L) and lengths (M,) to match probs")
    if (lengths < 1).any() or (lengths > probs.shape[1]).any():
        raise ValueError("every length must lie in 1..L")
    valid = np.arange(probs.shape[1])[None, :] < lengths[:, None]
    return probs, np.where(valid, targets, 0), valid


def correct_token_probs(probs: np.ndarray, targets: np.ndarray, lengths: np.ndarray) -> np.ndarray:
    """``P_{m,i}(y_{m,i})`` with zeros at padded positions."""

    probs, targets, valid = _prepare(probs, targets, lengths)
    picked = np.take_along_axis(probs, targets[..., None], axis=-1)[..., 0]
    return np.where(valid, picked, 0.0)


def soft_accuracy(probs: np.ndarray, targets: np.ndarray, lengths: np.ndarray) -> float:
    """Mean over sequences of the mean correct-token probability."""

    picked = correct_token_probs(probs, targets, lengths)
    return float(np.mean(picked.sum(axis=1) / np.asarray(lengths, dtype=np.float64)))


def soft_confusion(
    probs: np.ndarray, targets: np.ndarray, lengths: np.ndarray
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-class soft TP, FP and FN accumulated over all valid tokens.

    TP_c sums ``P(c)`` where the target is ``c``; FP_c sums ``P(c)`` where
    it is not; FN_c sums ``1 - P(c)`` where the target is ``c``.
    """

    probs, targets, valid = _prepare(probs, targets, lengths)
    rows = probs[valid]
    onehot = np.eye(probs.shape[2])[targets[valid]]
    tp = (rows * onehot).sum(axis=0)
    fp = (rows * (1.0 - onehot)).sum(axis=0)
    fn = ((1.0 - rows) * onehot).sum(axis=0)
    return tp, fp, fn


def soft_precision_recall(
    probs: np.ndarray, targets: np.ndarray, lengths: np.ndarray, epsilon: float = DEFAULT_EPSILON
) -> Tuple[float, float]:
    """Macro soft precision and recall over all ``C`` classes."""

    tp, fp, fn = soft_confusion(probs, targets, lengths)
    precision = tp / (tp + fp + epsilon)
    recall = tp / (tp + fn + epsilon)
    return float(precision.mean()), float(recall.mean())


def per_class_f1(
    predictions: np.ndarray, targets: np.ndarray, lengths: np.ndarray, num_classes: int
) -> Tuple[np.ndarray, np.ndarray]:
    """Hard per-class F1 and class support over valid tokens."""

    predictions = np.asarray(predictions, dtype=np.int64)
    targets = np.asarray(targets, dtype=np.int64)
    lengths = np.asarray(lengths, dtype=np.int64)
    if predictions.size == 0 or predictions.shape != targets.shape:
        raise ValueError("predictions and targets must be non-empty and equally shaped")
    valid = np.arange(predictions.shape[1])[None, :] < lengths[:, None]
    pred, true = predictions[valid], targets[valid]
    f1 = np.zeros(num_classes)
    support = np.zeros(num_classes)
    for c in range(num_classes):
        tp = np.sum((pred == c) & (true == c))
        fp = np.sum((pred == c) & (true != c))
        fn = np.sum((pred != c) & (true == c))
        support[c] = tp + fn
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        if precision + recall > 0:
            f1[c] = 2 * precision * recall / (precision + recall)
    return f1, support


def weighted_f1(
    predictions: np.ndarray, targets: np.ndarray, lengths: np.ndarray, num_classes: int = 9
) -> float:
    """Support-weighted mean of hard per-class F1."""

    f1, support = per_class_f1(predictions, targets, lengths, num_classes)
    return float((f1 * support).sum() / support.sum())


def compute_metrics(
    probs: np.ndarray, targets: np.ndarray, lengths: np.ndarray, epsilon: float = DEFAULT_EPSILON
) -> MetricsReport:
    """All metrics for a batch; hard predictions are the per-token argmax."""

    probs = np.asarray(probs, dtype=np.float64)
    precision, recall = soft_precision_recall(probs, targets, lengths, epsilon)
    predictions = probs.argmax(axis=-1)
    f1, support = per_class_f1(predictions, targets, lengths, probs.shape[2])
    return MetricsReport(
        avg_soft_accuracy=soft_accuracy(probs, targets, lengths),
        avg_soft_precision=precision,
        avg_soft_recall=recall,
        weighted_f1=float((f1 * support).sum() / support.sum()),
        per_class_f1=tuple(float(v) for v in f1),
        epsilon=epsilon,
    )
