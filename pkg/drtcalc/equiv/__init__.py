"""
Equivalence checkers over explored graphs.

All checkers take a graph and two state ids of it; binary checks on terms build
one joint graph with explore_many so both roots share state numbering.
"""
import logging
from typing import Callable, Dict

from ..conf import DEFAULT_MAX_STATES
from ..statespace import TwoPhaseLts, explore_many, time_free_project
from ..terms import ActionTable, Term
from .branching import branching_bisim_tp, rooted_branching_tp, rooted_branching_untimed
from .strong import strong_bisim
from .timestamped import dormancy_aware_rb, rooted_branching_ts, ts_branching_bisim
from .validate import validate_witness, verdict_is_valid
from .verdict import NO, UNKNOWN, YES, Failure, Verdict

logger = logging.getLogger(__name__)

Checker = Callable[[TwoPhaseLts, int, int], Verdict]

RELATIONS: Dict[str, Checker] = {
    "strong": strong_bisim,
    "b": branching_bisim_tp,
    "rb": rooted_branching_tp,
    "rb-ts": rooted_branching_ts,
    "da-rb": dormancy_aware_rb,
    "untimed-rb": lambda l, s1, s2: rooted_branching_untimed(time_free_project(l), s1, s2),
}


def get_checker(relation: str) -> Checker:
    if relation not in RELATIONS:
        raise KeyError(f"unknown relation {relation!r}; available: {', '.join(RELATIONS)}")
    return RELATIONS[relation]


def _require_state(l: TwoPhaseLts, s: int) -> None:
    if not 0 <= s < len(l):
        raise IndexError(f"state {s} outside graph of {len(l)} states")


def decide(relation: str, l: TwoPhaseLts, s1: int, s2: int) -> Verdict:
    """
    Run one checker on two states of l.

    untimed-rb is decided on the time-free projection of l, which keeps state ids.
    """
    checker = get_checker(relation)
    _require_state(l, s1)
    _require_state(l, s2)
    verdict = checker(l, s1, s2)
    logger.debug(f"{relation}({s1}, {s2}) = {verdict.answer}")
    return verdict


def compare_terms(
    relation: str,
    lhs: Term,
    rhs: Term,
    table: ActionTable,
    max_states: int = DEFAULT_MAX_STATES,
) -> Verdict:
    """Explore lhs and rhs jointly and decide relation on their roots."""
    l = explore_many([lhs, rhs], table, max_states)
    return decide(relation, l, *l.roots)


__all__ = [
    "RELATIONS", "Verdict", "Failure", "YES", "NO", "UNKNOWN",
    "strong_bisim", "branching_bisim_tp", "rooted_branching_tp", "rooted_branching_ts",
    "dormancy_aware_rb", "rooted_branching_untimed", "ts_branching_bisim",
    "validate_witness", "verdict_is_valid", "get_checker", "decide", "compare_terms",
]
