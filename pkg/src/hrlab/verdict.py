from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """A boolean outcome with the numerical margin it was decided on.

    Truthiness follows ``holds`` so a verdict can be used directly in ``if``.
    """

    holds: bool
    margin: float
    detail: dict[str, Any] = field(default_factory=dict, compare=False)

    def __bool__(self) -> bool:
        return bool(self.holds)

    def to_json(self) -> dict[str, Any]:
        return {"verdict": bool(self.holds), "margin": float(self.margin), "detail": self.detail}
