"""JSON checkpoints: vocabulary constants, configs and every named tensor.

Tensors are stored as ``{"shape": [...], "dtype": ..., "data": [...]}`` with
decimal floats that round-trip exactly, so a reloaded model decodes
identically.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, Tuple

import torch
from pydantic import ValidationError

from errors import CheckpointError

from .model import ModelConfig, PointerScheduler
from .training import TrainConfig
from .vocab import vocabulary_constants

FORMAT_VERSION = 1


def save_checkpoint(model: PointerScheduler, path: Path, train_config: TrainConfig | None = None) -> None:
    tensors = {
        name: {
            "shape": list(tensor.shape),
            "dtype": str(tensor.dtype).removeprefix("torch."),
            "data": tensor.detach().cpu().double().flatten().tolist(),
        }
        for name, tensor in model.state_dict().items()
    }
    document: Dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "vocabulary": vocabulary_constants(),
        "model": model.config.model_dump(),
        "train_config": train_config.model_dump(mode="json") if train_config else None,
        "tensors": tensors,
    }
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(document), encoding="utf-8")


def load_checkpoint(path: Path) -> Tuple[PointerScheduler, TrainConfig | None]:
    """Rebuild a model; raises :class:`CheckpointError` on any mismatch."""

    if not path.exists():
        raise CheckpointError(f"checkpoint {path} not found")
    try:
        document = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise CheckpointError(f"checkpoint {path} is not valid JSON") from exc
    if document.get("format_version") != FORMAT_VERSION:
        raise CheckpointError(f"unsupported checkpoint format {document.get('format_version')!r}")
    if document.get("vocabulary") != vocabulary_constants():
        raise CheckpointError("checkpoint vocabulary does not match this build")
    try:
        config = ModelConfig(**document["model"])
        train_config = TrainConfig(**document["train_config"]) if document.get("train_config") else None
    except (KeyError, TypeError, ValidationError) as exc:
        raise CheckpointError(f"invalid checkpoint configuration: {exc}") from exc
    model = PointerScheduler(config)
    expected = model.state_dict()
    stored = document.get("tensors", {})
    if set(stored) != set(expected):
        raise CheckpointError("checkpoint tensors do not match the model layout")
    state = {}
    for name, ref in expected.items():
        entry = stored[name]
        if list(entry["shape"]) != list(ref.shape):
            raise CheckpointError(f"tensor {name} has shape {entry['shape']}, expected {list(ref.shape)}")
        dtype = getattr(torch, entry.get("dtype", "float64"))
        state[name] = torch.tensor(entry["data"], dtype=dtype).reshape(entry["shape"])
    model.load_state_dict(state)
    model.eval()
    return model, train_config
