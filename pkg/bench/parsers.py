"""Parsing helpers for command line values."""

from __future__ import annotations

import shlex
from typing import List


def parse_int_list(text: str) -> List[int]:
    """Parse ``"0,1,2"``, ``"0 1 2"`` or ``"[0, 1, 2]"`` into integers.

    Raises
    ------
    ValueError
        If any token is not an integer.
    """

    cleaned = text.strip().strip("[]").replace(",", " ")
    values: List[int] = []
    for tok in shlex.split(cleaned):
        try:
            values.append(int(tok))
        except ValueError as exc:
            raise ValueError(f"not an integer: {tok!r}") from exc
    return values
