"""Result record produced by every randomized check and witness search."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a property check.

    ``worst_margin`` is the largest violation seen over all trials: the
    cone deficit for inequalities, the order-unit norm of the residual for
    identities. ``0.0`` means every trial held exactly. For witness
    searches it is the violation magnitude of the witness found.
    """

    check_id: str
    passed: int
    failed: int
    worst_margin: float = 0.0
    witness: Optional[dict] = None
    details: dict = field(default_factory=dict)
    note: Optional[str] = None

    @property
    def trials(self) -> int:
        return self.passed + self.failed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "check_id": self.check_id,
            "passed": self.passed,
            "failed": self.failed,
            "worst_margin": self.worst_margin,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.details:
            out["details"] = self.details
        if self.note:
            out["note"] = self.note
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)
