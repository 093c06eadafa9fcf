"""Result marker for semi-decision procedures."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Undecided:
    """A bounded search ended without an answer; ``reason`` says which bound was hit."""

    reason: str

    def __bool__(self) -> bool:
        return False
