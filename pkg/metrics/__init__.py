"""Sequence-quality metrics for the neural scheduler."""

from .sequence import (
    MetricsReport,
    compute_metrics,
    correct_token_probs,
    soft_accuracy,
    soft_confusion,
    soft_precision_recall,
    weighted_f1,
)

__all__ = [
    "MetricsReport",
    "compute_metrics",
    "correct_token_probs",
    "soft_accuracy",
    "soft_confusion",
    "soft_precision_recall",
    "weighted_f1",
]
