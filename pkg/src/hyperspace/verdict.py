"""Outcomes of checks that can only be decided at a stated resolution."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Mapping


class Outcome(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class Witness:
    """The concrete point (and where it was found) that makes a check fail."""

    point: Any
    value: float | None = None
    index: int | None = None
    member: str | None = None
    side: str | None = None

    def describe(self) -> str:
        parts = []
        if self.member is not None:
            parts.append(f"member={self.member}")
        if self.side is not None:
            parts.append(f"side={self.side}")
        if self.index is not None:
            parts.append(f"n={self.index}")
        if self.point is not None:
            parts.append(f"x={self.point!r}")
        if self.value is not None:
            parts.append(f"value={self.value!r}")
        return " ".join(parts)


@dataclass(frozen=True)
class Verdict:
    """Pass/fail/undecided outcome of a check, with its witness and resolution.

    ``details`` carries check-specific extras (covering index, stabilisation
    index, sub-verdicts, per-index traces).
    """

    outcome: Outcome
    witness: Witness | None = None
    resolution: Mapping[str, Any] = field(default_factory=dict)
    details: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.outcome is Outcome.FAIL and self.witness is None:
            raise ValueError("a failing verdict needs a witness")

    @property
    def passed(self) -> bool:
        return self.outcome is Outcome.PASS

    @property
    def failed(self) -> bool:
        return self.outcome is Outcome.FAIL
