from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Optional, Tuple

YES = "yes"
NO = "no"
UNKNOWN = "unknown"

Pair = Tuple[int, int]


@dataclass
class Verdict:
    """
    Result of an equivalence check.

    Attributes:
        relation: Relation name (strong, b, rb, rb-ts, da-rb, untimed-rb).
        answer: yes, no, or unknown (unknown only for the two-phase rooted check).
        witness: State pairs of the relation found (on yes).
        evidence: Failed condition and a distinguishing trace (on no).
        note: Free text (on unknown).
    """
    relation: str
    answer: str
    witness: FrozenSet[Pair] = frozenset()
    evidence: Dict[str, Any] = field(default_factory=dict)
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.answer == YES

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "relation": self.relation,
            "answer": self.answer,
            "witness_pairs": len(self.witness),
        }
        if self.evidence:
            out["evidence"] = self.evidence
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class Failure:
    """A transfer or root condition that could not be met for a pair."""
    condition: str
    side: str
    label: Optional[str] = None
    stamp: Optional[int] = None
    source: Optional[int] = None
    target: Optional[int] = None
    blocked: Optional[Pair] = None

    def describe(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"condition": self.condition, "side": self.side}
        for key in ("label", "stamp", "source", "target"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        return out
