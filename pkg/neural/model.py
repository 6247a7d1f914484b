"""Encoder-decoder scheduler with a count-based dynamic mask.

The encoder embeds the task tokens and runs an LSTM cell over the real
(non-pad) positions. The decoder starts from the encoder's final state and
the start token, and at each step projects its hidden state to one logit per
task type. Types whose remaining count is zero get ``-1e9`` added before the
softmax, so any decoded sequence is a rearrangement of the input multiset.
There is no attention layer.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import torch
import torch.nn.functional as F
from pydantic import BaseModel, ConfigDict, Field
from torch import Tensor, nn

from .vocab import OUTPUT_CLASSES, START_TOKEN, TASK_TOKEN_OFFSET, VOCAB_SIZE, encode_types

MASK_VALUE = -1e9

State = Tuple[Tensor, Tensor]


class ModelConfig(BaseModel):
    """Layer sizes of :class:`PointerScheduler`."""

    model_config = ConfigDict(frozen=True)

    embed_dim: int = Field(default=128, ge=1)
    hidden_size: int = Field(default=128, ge=1)


@dataclass
class DecodeOutput:
    """Probability rows ``(B, L, 9)`` and argmax classes ``(B, L)`` (``-1`` at pads)."""

    probs: Tensor
    predictions: Tensor


def _mask(counts: Tensor, dtype: torch.dtype) -> Tensor:
    zero = torch.zeros((), dtype=dtype)
    return torch.where(counts > 0, zero, torch.full((), MASK_VALUE, dtype=dtype))


def build_mask(remaining_counts: Tensor | Sequence[int], dtype: torch.dtype = torch.float64) -> Tensor:
    """Additive mask: 0 where a type is still available, ``-1e9`` where exhausted."""

    counts = torch.as_tensor(remaining_counts)
    if (counts < 0).any():
        raise ValueError("remaining counts must be non-negative")
    if (counts.sum(dim=-1) == 0).any():
        raise ValueError("all counts are zero; decoding should already have stopped")
    return _mask(counts, dtype)


def type_counts(tokens: Tensor, lengths: Tensor) -> Tensor:
    """Per-row count of each task type among the first ``length`` tokens."""

    valid = torch.arange(tokens.shape[1]).unsqueeze(0) < lengths.unsqueeze(1)
    classes = (tokens - TASK_TOKEN_OFFSET).clamp(min=0)
    counts = torch.zeros(tokens.shape[0], OUTPUT_CLASSES, dtype=torch.long)
    return counts.scatter_add_(1, classes, valid.long())


class PointerScheduler(nn.Module):
    """Embedding, LSTM encoder, LSTM decoder and a linear projection to 9 logits, all float64."""

    def __init__(self, config: ModelConfig | None = None, seed: int = 0) -> None:
        super().__init__()
        self.config = config or ModelConfig()
        self.embedding = nn.Embedding(VOCAB_SIZE, self.config.embed_dim)
        self.encoder = nn.LSTMCell(self.config.embed_dim, self.config.hidden_size)
        self.decoder = nn.LSTMCell(self.config.embed_dim, self.config.hidden_size)
        self.projection = nn.Linear(self.config.hidden_size, OUTPUT_CLASSES)
        # probability rows must sum to one within 1e-12
        self.to(torch.float64)
        self.reset_parameters(seed)

    def reset_parameters(self, seed: int) -> None:
        """Uniform in ``[-1/sqrt(fan_in), 1/sqrt(fan_in)]`` per tensor, seeded."""

        generator = torch.Generator().manual_seed(seed)
        with torch.no_grad():
            for name, param in self.named_parameters():
                fan_in = self.config.embed_dim if name.startswith("embedding") else self.config.hidden_size
                bound = 1.0 / math.sqrt(fan_in)
                param.uniform_(-bound, bound, generator=generator)

    def _check_inputs(self, tokens: Tensor, lengths: Tensor) -> None:
        if tokens.dim() != 2 or lengths.shape != (tokens.shape[0],):
            raise ValueError("tokens must be (B, L) and lengths (B,)")
        if (lengths < 1).any() or (lengths > tokens.shape[1]).any():
            raise ValueError("every sequence needs a length in 1..L")
        if (tokens < 0).any() or (tokens >= VOCAB_SIZE).any():
            raise ValueError("token outside the vocabulary")
        valid = torch.arange(tokens.shape[1]).unsqueeze(0) < lengths.unsqueeze(1)
        real = tokens[valid]
        if ((real < TASK_TOKEN_OFFSET) | (real >= START_TOKEN)).any():
            raise ValueError("positions before the length must hold task tokens")

    def encode(self, tokens: Tensor, lengths: Tensor) -> State:
        """Final encoder (hidden, cell) state; pad positions never enter the recurrence."""

        self._check_inputs(tokens, lengths)
        embedded = self.embedding(tokens)
        batch = tokens.shape[0]
        h = embedded.new_zeros(batch, self.config.hidden_size)
        c = embedded.new_zeros(batch, self.config.hidden_size)
        for t in range(int(lengths.max())):
            h_next, c_next = self.encoder(embedded[:, t], (h, c))
            active = (lengths > t).unsqueeze(1)
            h = torch.where(active, h_next, h)
            c = torch.where(active, c_next, c)
        return h, c

    def decode_step(self, prev_tokens: Tensor, state: State, remaining_counts: Tensor) -> Tuple[Tensor, Tensor, State]:
        """One decoder step: returns raw logits, masked probabilities and the new state."""

        h, c = self.decoder(self.embedding(prev_tokens), state)
        logits = self.projection(h)
        probs = torch.softmax(logits + _mask(remaining_counts, logits.dtype), dim=-1)
        return logits, probs, (h, c)

    def forward(
        self,
        tokens: Tensor,
        lengths: Tensor,
        targets: Tensor | None = None,
        teacher_forcing: bool = False,
    ) -> DecodeOutput:
        """Decode every sequence for ``max(lengths)`` steps.

        Without teacher forcing the argmax class is fed back and consumed from
        the counts; with it, the target token is.
        """

        if teacher_forcing and targets is None:
            raise ValueError("teacher forcing needs target tokens")
        counts = type_counts(tokens, lengths)
        state = self.encode(tokens, lengths)
        prev = torch.full((tokens.shape[0],), START_TOKEN, dtype=torch.long)
        rows, predictions = [], []
        for t in range(int(lengths.max())):
            _, probs, state = self.decode_step(prev, state, counts)
            active = lengths > t
            choice = probs.argmax(dim=-1)
            if teacher_forcing:
                chosen = torch.where(active, targets[:, t] - TASK_TOKEN_OFFSET, choice)
            else:
                chosen = choice
            rows.append(probs)
            predictions.append(torch.where(active, choice, torch.full_like(choice, -1)))
            counts = counts - F.one_hot(chosen, OUTPUT_CLASSES) * active.long().unsqueeze(1)
            prev = chosen + TASK_TOKEN_OFFSET
        return DecodeOutput(torch.stack(rows, dim=1), torch.stack(predictions, dim=1))


def _single(type_ids: Sequence[int]) -> Tuple[Tensor, Tensor]:
    tokens = torch.tensor([encode_types(type_ids)], dtype=torch.long)
    return tokens, torch.tensor([len(type_ids)], dtype=torch.long)


def greedy_decode(model: PointerScheduler, type_ids: Sequence[int]) -> list[int]:
    """Sequential decoding of one instance; returns type ids in serving order.

    Works for any length, the count mask does not depend on the training
    sequence length.
    """

    if len(type_ids) == 0:
        raise ValueError("cannot decode an empty instance")
    tokens, lengths = _single(type_ids)
    was_training = model.training
    model.eval()
    with torch.no_grad():
        out = model(tokens, lengths)
    model.train(was_training)
    return out.predictions[0].tolist()


def teacher_forced_forward(model: PointerScheduler, input_types: Sequence[int], target_types: Sequence[int]) -> Tensor:
    """Probability rows ``(L, 9)`` with the ground-truth previous token fed at each step."""

    if sorted(input_types) != sorted(target_types):
        raise ValueError("target is not a rearrangement of the input")
    tokens, lengths = _single(input_types)
    targets = torch.tensor([encode_types(target_types)], dtype=torch.long)
    return model(tokens, lengths, targets, teacher_forcing=True).probs[0]
