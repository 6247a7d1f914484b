"""Encoder-decoder neural scheduler: model, losses, training and checkpoints."""

from .checkpoint import load_checkpoint, save_checkpoint
from .inference import NeuralScheduler
from .losses import position_weights, soft_sequence_loss, weighted_soft_loss
from .model import (
    MASK_VALUE,
    DecodeOutput,
    ModelConfig,
    PointerScheduler,
    build_mask,
    greedy_decode,
    teacher_forced_forward,
    type_counts,
)
from .training import TrainConfig, TrainReport, split_dataset, samples_to_tensors, train
from .vocab import PAD_TOKEN, START_TOKEN, VOCAB_SIZE, encode_types

__all__ = [
    "DecodeOutput",
    "MASK_VALUE",
    "ModelConfig",
    "NeuralScheduler",
    "PAD_TOKEN",
    "PointerScheduler",
    "START_TOKEN",
    "TrainConfig",
    "TrainReport",
    "VOCAB_SIZE",
    "build_mask",
    "encode_types",
    "greedy_decode",
    "load_checkpoint",
    "position_weights",
    "samples_to_tensors",
    "save_checkpoint",
    "soft_sequence_loss",
    "split_dataset",
    "teacher_forced_forward",
    "train",
    "type_counts",
    "weighted_soft_loss",
]
