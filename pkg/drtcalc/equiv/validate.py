"""
Re-check of a yes-witness: every pair must meet its transfer conditions with
the witness itself as the relation, and the root pair must be in it.
"""
import logging
from typing import FrozenSet, List, Union

from ..statespace import TwoPhaseLts, UntimedLts, time_free_project
from .branching import _branching_check, _moves_fn, _root_failure
from .strong import _check_strong
from .timestamped import StampedIndex, _StampedCheck, _ts_root_failure
from .verdict import Failure, Pair, Verdict

logger = logging.getLogger(__name__)


class _Fixed:
    """Stand-in for PairSolver.holds over a fixed relation."""

    def __init__(self, relation: FrozenSet[Pair]):
        self.relation = relation

    def holds(self, pair: Pair) -> bool:
        return pair in self.relation


def validate_witness(
    relation: str,
    l: Union[TwoPhaseLts, UntimedLts],
    s1: int,
    s2: int,
    witness: FrozenSet[Pair],
) -> List[Failure]:
    """
    Transfer-condition violations of witness (an empty list means it is valid).

    Args:
        relation: One of strong, b, rb, rb-ts, da-rb, untimed-rb.
        l: The graph the witness was computed on (the projection for untimed-rb).
        s1, s2: Root pair.
        witness: State pairs claimed to form a bisimulation.
    """
    fixed = _Fixed(frozenset(witness))
    violations: List[Failure] = []
    if (s1, s2) not in fixed.relation:
        violations.append(Failure("membership", "both", source=s1, target=s2))
        return violations

    if relation == "strong":
        check = _check_strong(l)
    elif relation in ("b", "rb", "untimed-rb"):
        moves = _moves_fn(l, timed=relation != "untimed-rb")
        check = _branching_check(l, moves)
    elif relation in ("rb-ts", "da-rb"):
        index = StampedIndex(l)
        check = _StampedCheck(index, dormancy_aware=relation == "da-rb")
    else:
        raise ValueError(f"unknown relation {relation}")

    for pair in sorted(fixed.relation):
        failure = check(pair, fixed.holds)
        if failure is not None:
            violations.append(failure)

    if relation in ("rb", "untimed-rb"):
        failure = _root_failure(fixed, moves, s1, s2)
        if failure is not None:
            violations.append(failure)
    elif relation in ("rb-ts", "da-rb"):
        failure = _ts_root_failure(index, fixed, s1, s2)
        if failure is not None:
            violations.append(failure)

    if violations:
        logger.warning(f"{relation} witness for ({s1}, {s2}) has {len(violations)} violations")
    return violations


def verdict_is_valid(verdict: Verdict, l, s1: int, s2: int) -> bool:
    """True unless a yes-verdict carries a witness that fails the re-check."""
    if not verdict.holds:
        return True
    if verdict.relation == "untimed-rb" and isinstance(l, TwoPhaseLts):
        l = time_free_project(l)
    return not validate_witness(verdict.relation, l, s1, s2, verdict.witness)
