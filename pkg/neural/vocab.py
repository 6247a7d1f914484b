"""Token vocabulary for the neural scheduler.

On disk, sequences hold raw type ids 0..8 padded with 0. Inside the model
every task token is shifted by one so that 0 can mean padding unambiguously.
"""
from __future__ import annotations

from typing import Dict, Sequence

from tasks.catalog import TYPE_COUNT

PAD_TOKEN = 0
TASK_TOKEN_OFFSET = 1
START_TOKEN = TYPE_COUNT + TASK_TOKEN_OFFSET
VOCAB_SIZE = START_TOKEN + 1
OUTPUT_CLASSES = TYPE_COUNT


def type_to_token(type_id: int) -> int:
    if not 0 <= type_id < TYPE_COUNT:
        raise ValueError(f"type id {type_id} outside 0..{TYPE_COUNT - 1}")
    return type_id + TASK_TOKEN_OFFSET


def token_to_type(token: int) -> int:
    if not TASK_TOKEN_OFFSET <= token < START_TOKEN:
        raise ValueError(f"token {token} is not a task token")
    return token - TASK_TOKEN_OFFSET


def encode_types(type_ids: Sequence[int], pad_to: int | None = None) -> list[int]:
    """Task tokens for ``type_ids``, right-padded with :data:`PAD_TOKEN`."""

    tokens = [type_to_token(int(t)) for t in type_ids]
    if pad_to is not None:
        if pad_to < len(tokens):
            raise ValueError("pad_to is shorter than the sequence")
        tokens += [PAD_TOKEN] * (pad_to - len(tokens))
    return tokens


def vocabulary_constants() -> Dict[str, int]:
    return {
        "pad_token": PAD_TOKEN,
        "task_token_offset": TASK_TOKEN_OFFSET,
        "start_token": START_TOKEN,
        "vocab_size": VOCAB_SIZE,
        "output_classes": OUTPUT_CLASSES,
    }
