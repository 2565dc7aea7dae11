"""
Strong bisimilarity on two-phase graphs, σ treated as an ordinary label.
"""
from typing import List, Optional, Tuple

from ..statespace import SIGMA, TwoPhaseLts
from .fixpoint import PairSolver, Related
from .verdict import NO, YES, Failure, Pair, Verdict

TICK_LABEL = "✓"


def moves(l: TwoPhaseLts, s: int) -> List[Tuple[str, Optional[int]]]:
    """Action edges, the σ edge and a ✓ pseudo-edge for √."""
    out: List[Tuple[str, Optional[int]]] = list(l.edges[s])
    nxt = l.sigma_next[s]
    if nxt is not None:
        out.append((SIGMA, nxt))
    if l.is_tick(s):
        out.append((TICK_LABEL, None))
    return out


def _signature(l: TwoPhaseLts, s: int) -> frozenset:
    return frozenset(label for label, _ in moves(l, s))


def _check_strong(l: TwoPhaseLts):
    def check(pair: Pair, related: Related) -> Optional[Failure]:
        for side, (x, y) in (("left", pair), ("right", pair[::-1])):
            ymoves = moves(l, y)
            for label, tx in moves(l, x):
                blocked = None
                matched = False
                for other, ty in ymoves:
                    if other != label:
                        continue
                    if tx is None:
                        matched = True
                        break
                    q = (tx, ty) if side == "left" else (ty, tx)
                    if related(q):
                        matched = True
                        break
                    blocked = blocked or q
                if not matched:
                    return Failure("transfer", side, label, None, x, tx, blocked)
        return None
    return check


def strong_bisim(l: TwoPhaseLts, s1: int, s2: int) -> Verdict:
    """
    Strong bisimilarity of s1 and s2.

    Example:
        lts = explore_many([Alt(Act("a"), Act("a")), Act("a")], table)
        strong_bisim(lts, *lts.roots).answer  # 'yes'
    """
    solver = PairSolver(
        _check_strong(l),
        prefilter=lambda p: _signature(l, p[0]) == _signature(l, p[1]),
    )
    if solver.holds((s1, s2)):
        return Verdict("strong", YES, witness=solver.relation())
    return Verdict("strong", NO, evidence=_evidence(solver, (s1, s2)))


def _evidence(solver: PairSolver, pair: Pair) -> dict:
    failure = solver.failures.get(pair)
    out = {"trace": solver.trace(pair)}
    if failure is not None:
        out.update(failure.describe())
    return out
