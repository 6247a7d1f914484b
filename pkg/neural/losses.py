"""Soft sequence losses.

Both losses are ``1 - sum_t w_t * P_t(target_t)`` averaged over the batch;
the plain loss uses ``w_t = 1/L`` and the weighted loss a decreasing weight
profile normalised to sum to one over each sequence's real length.
"""
from __future__ import annotations

from typing import Literal

import torch
from torch import Tensor

from .vocab import TASK_TOKEN_OFFSET

WeightScheme = Literal["uniform", "linear", "exponential"]


def _batched(probs: Tensor, targets: Tensor, lengths: Tensor | int) -> tuple[Tensor, Tensor, Tensor]:
    if probs.dim() == 2:
        probs, targets = probs.unsqueeze(0), targets.unsqueeze(0)
    lengths = torch.as_tensor(lengths, dtype=torch.long).reshape(-1)
    return probs, targets, lengths


def position_weights(
    lengths: Tensor, max_len: int, scheme: WeightScheme = "linear", decay: float = 0.8, dtype: torch.dtype = torch.float64
) -> Tensor:
    """``(B, max_len)`` weights, zero past each length, each row summing to one.

    ``linear``: ``(L - t + 1) / (L (L + 1) / 2)`` for 1-based ``t``.
    ``exponential``: ``decay ** (t - 1)`` renormalised.
    """

    t = torch.arange(1, max_len + 1, dtype=dtype).unsqueeze(0)
    length = lengths.to(dtype).unsqueeze(1)
    valid = t <= length
    if scheme == "uniform":
        raw = torch.ones_like(t).expand(lengths.shape[0], -1)
    elif scheme == "linear":
        raw = length - t + 1
    elif scheme == "exponential":
        raw = (decay ** (t - 1)).expand(lengths.shape[0], -1)
    else:
        raise ValueError(f"unknown weight scheme {scheme!r}")
    raw = torch.where(valid, raw, torch.zeros((), dtype=dtype))
    return raw / raw.sum(dim=1, keepdim=True)


def target_probs(probs: Tensor, targets: Tensor) -> Tensor:
    """Probability assigned to each target token; pads map to class 0 and are weighted out."""

    classes = (targets - TASK_TOKEN_OFFSET).clamp(min=0)
    return probs.gather(-1, classes.unsqueeze(-1)).squeeze(-1)


def _loss(probs: Tensor, targets: Tensor, lengths: Tensor | int, scheme: WeightScheme, decay: float) -> Tensor:
    probs, targets, lengths = _batched(probs, targets, lengths)
    picked = target_probs(probs, targets[:, : probs.shape[1]])
    weights = position_weights(lengths, probs.shape[1], scheme, decay, probs.dtype)
    return 1.0 - (weights * picked).sum(dim=1).mean()


def soft_sequence_loss(probs: Tensor, targets: Tensor, lengths: Tensor | int) -> Tensor:
    """One minus the mean correct-token probability, ignoring pads."""
    return _loss(probs, targets, lengths, "uniform", 0.0)


def weighted_soft_loss(
    probs: Tensor, targets: Tensor, lengths: Tensor | int, scheme: WeightScheme = "linear", decay: float = 0.8
) -> Tensor:
    """Like :func:`soft_sequence_loss` but early positions count more."""
    return _loss(probs, targets, lengths, scheme, decay)
