from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

MAX_PRINTED_FAILURES = 5


@dataclass
class Tally:
    """Pass/fail counts of one sampled property or axiom."""
    id: str
    relation: str
    samples: int = 0
    passed: int = 0
    failed: int = 0
    skipped: int = 0  # instances whose state space exceeded the bound
    failures: List[Dict[str, Any]] = field(default_factory=list)

    def record(self, ok: bool, detail: Optional[Dict[str, Any]] = None) -> None:
        self.samples += 1
        if ok:
            self.passed += 1
            return
        self.failed += 1
        if detail is not None and len(self.failures) < MAX_PRINTED_FAILURES:
            self.failures.append(detail)

    def skip(self) -> None:
        self.skipped += 1

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_row(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "relation": self.relation,
            "samples": self.samples,
            "passed": self.passed,
            "failed": self.failed,
        }

    def to_dict(self) -> Dict[str, Any]:
        out = self.to_row()
        out["skipped"] = self.skipped
        if self.failures:
            out["failures"] = self.failures
        return out
