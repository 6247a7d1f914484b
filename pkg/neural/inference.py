"""Adapter exposing a trained model as a scheduler."""
from __future__ import annotations

from dataclasses import dataclass

from tasks.models import EvaluationContext, ProblemInstance, Schedule, schedule_from_types

from .model import PointerScheduler, greedy_decode


@dataclass
class NeuralScheduler:
    """Greedy sequential decoding, mapped back onto task indices."""

    model: PointerScheduler
    name: str = "pnt-net"

    def __call__(self, instance: ProblemInstance, ctx: EvaluationContext) -> Schedule:
        return schedule_from_types(instance, greedy_decode(self.model, instance.type_ids.tolist()))
