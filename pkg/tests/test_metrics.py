from __future__ import annotations

import numpy as np
import pytest
import torch

from metrics import (
    compute_metrics,
    soft_accuracy,
    soft_confusion,
    soft_precision_recall,
    weighted_f1,
)
from neural.losses import soft_sequence_loss


def _one_hot(classes: list[int], num_classes: int = 9) -> np.ndarray:
    return np.eye(num_classes)[classes]


def _random_batch(rng: np.random.Generator, m: int = 12, width: int = 10):
    logits = rng.normal(size=(m, width, 9))
    probs = np.exp(logits) / np.exp(logits).sum(axis=-1, keepdims=True)
    targets = rng.integers(0, 9, size=(m, width))
    lengths = rng.integers(1, width + 1, size=m)
    return probs, targets, lengths


def test_soft_accuracy_partial_credit() -> None:
    probs = _one_hot([1, 3, 2])[None]
    assert soft_accuracy(probs, np.array([[1, 2, 3]]), np.array([3])) == pytest.approx(1 / 3)
    assert soft_accuracy(_one_hot([1, 2, 3])[None], np.array([[1, 2, 3]]), np.array([3])) == 1.0
    uniform = np.full((2, 4, 9), 1 / 9)
    assert soft_accuracy(uniform, np.zeros((2, 4), dtype=int), np.array([4, 2])) == pytest.approx(1 / 9)


def test_empty_batch_rejected() -> None:
    with pytest.raises(ValueError):
        soft_accuracy(np.zeros((0, 3, 9)), np.zeros((0, 3), dtype=int), np.zeros(0, dtype=int))
    with pytest.raises(ValueError):
        weighted_f1(np.zeros((0, 3), dtype=int), np.zeros((0, 3), dtype=int), np.zeros(0, dtype=int))


def test_accuracy_is_one_minus_loss() -> None:
    probs, targets, lengths = _random_batch(np.random.default_rng(0))
    loss = soft_sequence_loss(
        torch.from_numpy(probs), torch.from_numpy(targets + 1), torch.from_numpy(lengths)
    ).item()
    assert soft_accuracy(probs, targets, lengths) == pytest.approx(1 - loss, abs=1e-12)


def test_soft_precision_recall_two_class_golden() -> None:
    p0 = np.array([0.9, 0.6, 0.2, 0.3, 0.5])
    probs = np.stack([p0, 1 - p0], axis=-1)[None]
    targets = np.array([[0, 0, 1, 1, 1]])
    tp, fp, fn = soft_confusion(probs, targets, np.array([5]))
    assert tp == pytest.approx([1.5, 2.0])
    assert fp == pytest.approx([1.0, 0.5])
    assert fn == pytest.approx([0.5, 1.0])
    precision, recall = soft_precision_recall(probs, targets, np.array([5]))
    assert precision == pytest.approx(0.7, abs=1e-8)
    assert recall == pytest.approx((0.75 + 2 / 3) / 2, abs=1e-8)


def test_soft_precision_recall_extremes() -> None:
    targets = np.array([[0, 4, 4, 7]])
    tp, fp, fn = soft_confusion(_one_hot([0, 4, 4, 7])[None], targets, np.array([4]))
    present = [0, 4, 7]
    assert (tp[present] / (tp[present] + fp[present])).tolist() == [1.0, 1.0, 1.0]
    assert fn[present].tolist() == [0.0, 0.0, 0.0]
    precision, recall = soft_precision_recall(_one_hot([1, 5, 5, 2])[None], targets, np.array([4]))
    assert precision == 0.0 and recall == 0.0


def test_weighted_f1_golden() -> None:
    predictions = np.array([[0, 1, 1, 1, 0]])
    targets = np.array([[0, 0, 1, 1, 1]])
    assert weighted_f1(predictions, targets, np.array([5]), num_classes=2) == pytest.approx(0.6)
    assert weighted_f1(targets, targets, np.array([5])) == 1.0
    assert weighted_f1(1 - targets, targets, np.array([5]), num_classes=2) == 0.0


def test_metrics_ignore_padding_and_batch_order() -> None:
    rng = np.random.default_rng(4)
    probs, targets, lengths = _random_batch(rng, width=6)
    base = compute_metrics(probs, targets, lengths)
    padded_probs = np.concatenate([probs, rng.random((probs.shape[0], 3, 9))], axis=1)
    padded_targets = np.concatenate([targets, rng.integers(0, 9, size=(targets.shape[0], 3))], axis=1)
    padded = compute_metrics(padded_probs, padded_targets, lengths)
    perm = rng.permutation(probs.shape[0])
    shuffled = compute_metrics(probs[perm], targets[perm], lengths[perm])
    for other in (padded, shuffled):
        assert other.avg_soft_accuracy == pytest.approx(base.avg_soft_accuracy, abs=1e-12)
        assert other.avg_soft_precision == pytest.approx(base.avg_soft_precision, abs=1e-12)
        assert other.avg_soft_recall == pytest.approx(base.avg_soft_recall, abs=1e-12)
        assert other.weighted_f1 == pytest.approx(base.weighted_f1, abs=1e-12)
    assert list(base.to_row()) == ["weighted_f1", "avg_soft_accuracy", "avg_soft_precision", "avg_soft_recall"]
