"""
Branching bisimilarity on the two-phase graph (σ as a label that may be
preceded by a τ-path) and on untimed graphs.
"""
import logging
from collections import deque
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

from ..statespace import SIGMA, TwoPhaseLts, UntimedLts, sigma_lasso
from ..terms import TAU
from .fixpoint import PairSolver, Related
from .strong import TICK_LABEL, _evidence
from .verdict import NO, UNKNOWN, YES, Failure, Pair, Verdict

logger = logging.getLogger(__name__)

Graph = Union[TwoPhaseLts, UntimedLts]
Moves = Callable[[int], Sequence[Tuple[str, Optional[int]]]]


def _moves_fn(l: Graph, timed: bool) -> Moves:
    cache: Dict[int, List[Tuple[str, Optional[int]]]] = {}

    def moves(s: int):
        out = cache.get(s)
        if out is None:
            out = list(l.edges[s])
            if timed and l.sigma_next[s] is not None:
                out.append((SIGMA, l.sigma_next[s]))
            if l.is_tick(s):
                out.append((TICK_LABEL, None))
            cache[s] = out
        return out
    return moves


def _weak_labels(l: Graph, moves: Moves) -> List[FrozenSet[str]]:
    """Non-τ labels available after some τ-path, per state."""
    n = len(l)
    labels = [set(a for a, _ in moves(s) if a != TAU) for s in range(n)]
    tau_succ = [[t for a, t in l.edges[s] if a == TAU] for s in range(n)]
    changed = True
    while changed:
        changed = False
        for s in range(n):
            for t in tau_succ[s]:
                if not labels[t] <= labels[s]:
                    labels[s] |= labels[t]
                    changed = True
    return [frozenset(x) for x in labels]


def _tau_reach(l: Graph, x: int, y: int, rel: Related) -> List[int]:
    """States reachable from y by τ-steps whose targets are all related to x."""
    seen = {y}
    order = [y]
    queue = deque([y])
    while queue:
        q = queue.popleft()
        for a, q2 in l.edges[q]:
            if a == TAU and q2 not in seen and rel((x, q2)):
                seen.add(q2)
                order.append(q2)
                queue.append(q2)
    return order


def _branching_check(l: Graph, moves: Moves):
    def check(pair: Pair, related: Related) -> Optional[Failure]:
        for side, (x, y) in (("left", pair), ("right", pair[::-1])):
            rel = related if side == "left" else (lambda p: related((p[1], p[0])))
            reach = None
            for label, tx in moves(x):
                if label == TAU and rel((tx, y)):
                    continue
                if reach is None:
                    reach = _tau_reach(l, x, y, rel)
                matched, blocked = False, None
                for q in reach:
                    for other, tq in moves(q):
                        if other != label:
                            continue
                        if tx is None or rel((tx, tq)):
                            matched = True
                            break
                        if blocked is None:
                            blocked = (tx, tq) if side == "left" else (tq, tx)
                    if matched:
                        break
                if not matched:
                    return Failure("transfer", side, label, None, x, tx, blocked)
        return None
    return check


def _solver(l: Graph, timed: bool) -> Tuple[PairSolver, Moves]:
    moves = _moves_fn(l, timed)
    weak = _weak_labels(l, moves)
    solver = PairSolver(_branching_check(l, moves), prefilter=lambda p: weak[p[0]] == weak[p[1]])
    return solver, moves


def _root_failure(solver: PairSolver, moves: Moves, x: int, y: int) -> Optional[Failure]:
    """Initial moves must be matched by the same move, targets related."""
    for side, (a, b) in (("left", (x, y)), ("right", (y, x))):
        bmoves = moves(b)
        for label, ta in moves(a):
            ok = False
            for other, tb in bmoves:
                if other != label:
                    continue
                if ta is None:
                    ok = True
                    break
                pair = (ta, tb) if side == "left" else (tb, ta)
                if solver.holds(pair):
                    ok = True
                    break
            if not ok:
                return Failure("root", side, label, None, a, ta)
    return None


def branching_bisim_tp(l: TwoPhaseLts, s1: int, s2: int) -> Verdict:
    """Membership of (s1, s2) in the greatest two-phase branching bisimulation."""
    solver, _ = _solver(l, timed=True)
    if solver.holds((s1, s2)):
        return Verdict("b", YES, witness=solver.relation())
    return Verdict("b", NO, evidence=_evidence(solver, (s1, s2)))


def rooted_branching_tp(l: TwoPhaseLts, s1: int, s2: int) -> Verdict:
    """
    Two-phase rooted branching bisimilarity, decided on the greatest relation.

    The root condition is checked for every pair of σ-derivatives of s1 and s2
    that lies in the relation. A failure at (s1, s2) itself is definite; a
    failure at a later derivative pair yields unknown, since a smaller
    relation might leave that pair out.
    """
    solver, moves = _solver(l, timed=True)
    if not solver.holds((s1, s2)):
        return Verdict("rb", NO, evidence=_evidence(solver, (s1, s2)))
    failure = _root_failure(solver, moves, s1, s2)
    if failure is not None:
        return Verdict("rb", NO, evidence=failure.describe())
    path1, _ = sigma_lasso(l, s1)
    path2, _ = sigma_lasso(l, s2)
    for x in path1:
        for y in path2:
            if (x, y) == (s1, s2) or not solver.holds((x, y)):
                continue
            failure = _root_failure(solver, moves, x, y)
            if failure is not None:
                note = f"root condition fails at sigma-derivative pair ({x}, {y}) of the greatest relation"
                return Verdict("rb", UNKNOWN, evidence=failure.describe(), note=note)
    return Verdict("rb", YES, witness=solver.relation())


def rooted_branching_untimed(l: UntimedLts, s1: int, s2: int) -> Verdict:
    """Classic rooted branching bisimilarity; τ-cycles are absorbed."""
    solver, moves = _solver(l, timed=False)
    if not solver.holds((s1, s2)):
        return Verdict("untimed-rb", NO, evidence=_evidence(solver, (s1, s2)))
    failure = _root_failure(solver, moves, s1, s2)
    if failure is not None:
        return Verdict("untimed-rb", NO, evidence=failure.describe())
    return Verdict("untimed-rb", YES, witness=solver.relation())
