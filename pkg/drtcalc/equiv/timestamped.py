"""
Time-stamped branching bisimilarity and its dormancy-aware variant.

The stamped view is read off the two-phase graph: a step a[n] of s is an
a-edge of the σⁿ-derivative of s, and σⁿ-derivatives come from the σ-lasso of
s. A state that cannot idle n slices has the dead state as its n-fold shift.
√ has a ✓ move at stamp 0.

Idling is matched like a step: if one side idles n slices, the other side
must reach, through τ[n_i] steps with related intermediates, a state that
idles the remaining slices.
"""
import logging
import math
from collections import deque
from dataclasses import dataclass
from functools import reduce
from typing import Dict, List, Optional, Set, Tuple

from ..conf import STAMP_PERIOD_CAP
from ..sos import least_active
from ..statespace import TwoPhaseLts, sigma_lasso
from ..terms import TAU
from .fixpoint import PairSolver, Related
from .strong import TICK_LABEL, _evidence
from .verdict import NO, YES, Failure, Pair, Verdict

logger = logging.getLogger(__name__)

INFINITE = math.inf


class StampedIndex:
    """
    σ-lassos, shifts and activeness for every state of a graph, plus a dead state.

    Attributes:
        dead: Id of the dead state (one past the last real state).
        horizon: Largest stamp examined: longest finite σ-prefix plus the lcm
            of the σ-cycle lengths.
    """

    def __init__(self, l: TwoPhaseLts):
        self.lts = l
        self.dead = len(l)
        self._paths: List[List[int]] = []
        self._cycles: List[int] = []
        for s in range(len(l)):
            path, cycle = sigma_lasso(l, s)
            self._paths.append(path)
            self._cycles.append(cycle)
        prefix = max((len(p) - c if c else len(p) for p, c in zip(self._paths, self._cycles)), default=1)
        periods = {c for c in self._cycles if c}
        period = reduce(math.lcm, periods, 1)
        if period > STAMP_PERIOD_CAP:
            logger.warning(f"sigma-cycle period {period} capped at {STAMP_PERIOD_CAP}; stamp checks are truncated")
            period = STAMP_PERIOD_CAP
        self.horizon = prefix + period
        steps = lambda s: l.edges[s]
        self.active = least_active(range(len(l)), steps, l.is_tick)
        self._moves: Dict[int, List[Tuple[str, int, Optional[int]]]] = {}

    def idle_bound(self, s: int) -> float:
        """Largest n with idling(s, n); infinite on a σ-cycle."""
        if s == self.dead:
            return 0
        return INFINITE if self._cycles[s] else len(self._paths[s]) - 1

    def shift(self, s: int, n: int) -> int:
        if s == self.dead:
            return s
        path, cycle = self._paths[s], self._cycles[s]
        if n < len(path):
            return path[n]
        if not cycle:
            return self.dead
        start = len(path) - cycle
        return path[start + (n - start) % cycle]

    def edges(self, s: int) -> List[Tuple[str, int]]:
        return [] if s == self.dead else self.lts.edges[s]

    def is_tick(self, s: int) -> bool:
        return s != self.dead and self.lts.is_tick(s)

    def is_active(self, s: int) -> bool:
        return s in self.active

    def stamp_limit(self, s: int) -> int:
        return int(min(self.idle_bound(s), self.horizon))

    def stamped_moves(self, s: int) -> List[Tuple[str, int, Optional[int]]]:
        """(label, stamp, target) up to the horizon; ✓ for √ with no target."""
        out = self._moves.get(s)
        if out is not None:
            return out
        if self.is_tick(s):
            out = [(TICK_LABEL, 0, None)]
        else:
            out = [(label, n, target)
                   for n in range(self.stamp_limit(s) + 1)
                   for label, target in self.edges(self.shift(s, n))]
        self._moves[s] = out
        return out


@dataclass
class _Signature:
    visible: frozenset
    weak: frozenset


def _weak_visible(index: StampedIndex) -> List[frozenset]:
    """Visible labels (and ✓) reachable through τ- and σ-steps, per state."""
    l = index.lts
    n = len(l)
    labels = [set(a for a, _ in l.edges[s] if a != TAU) for s in range(n)]
    for s in range(n):
        if l.is_tick(s):
            labels[s].add(TICK_LABEL)
    succ = [[t for a, t in l.edges[s] if a == TAU] + ([l.sigma_next[s]] if l.sigma_next[s] is not None else [])
            for s in range(n)]
    changed = True
    while changed:
        changed = False
        for s in range(n):
            for t in succ[s]:
                if not labels[t] <= labels[s]:
                    labels[s] |= labels[t]
                    changed = True
    return [frozenset(x) for x in labels] + [frozenset()]


def _signatures(index: StampedIndex) -> List[_Signature]:
    weak = _weak_visible(index)
    out = []
    for s in range(index.dead + 1):
        visible = frozenset(a for a, _, _ in index.stamped_moves(s) if a != TAU)
        out.append(_Signature(visible, weak[s]))
    return out


class _StampedCheck:
    """Transfer conditions for one pair; dormancy_aware relaxes τ obligations toward inactive states."""

    def __init__(self, index: StampedIndex, dormancy_aware: bool):
        self.index = index
        self.da = dormancy_aware

    def __call__(self, pair: Pair, related: Related) -> Optional[Failure]:
        x, y = pair
        failure = self._transfer(x, y, related, "left")
        if failure is not None:
            return failure
        return self._transfer(y, x, lambda p: related((p[1], p[0])), "right")

    def _exempt(self, s: int) -> bool:
        return self.da and not self.index.is_active(s)

    def _reach(self, t1: int, t2: int, limit: int, rel: Related) -> List[Tuple[int, int]]:
        """Nodes (q, j): q reached from t2 by τ-steps with stamps summing to j ≤ limit."""
        idx = self.index
        seen: Set[Tuple[int, int]] = {(t2, 0)}
        order = [(t2, 0)]
        queue = deque(order)
        while queue:
            q, j = queue.popleft()
            for k in range(limit - j + 1):
                qk = idx.shift(q, k)
                if qk == idx.dead:
                    break
                for a, q2 in idx.edges(qk):
                    if a != TAU:
                        continue
                    node = (q2, j + k)
                    if node in seen:
                        continue
                    if self._exempt(q2) or rel((idx.shift(t1, j + k), q2)):
                        seen.add(node)
                        order.append(node)
                        queue.append(node)
        return order

    def _transfer(self, t1: int, t2: int, rel: Related, side: str) -> Optional[Failure]:
        idx = self.index
        limit = 0 if idx.is_tick(t1) else idx.stamp_limit(t1)
        reach = None
        for label, n, target in idx.stamped_moves(t1):
            if label == TAU:
                if self._exempt(target) or rel((target, idx.shift(t2, n))):
                    continue
            if reach is None:
                reach = self._reach(t1, t2, limit, rel)
            matched, blocked = False, None
            for q, j in reach:
                if j > n:
                    continue
                qn = idx.shift(q, n - j)
                if qn == idx.dead:
                    continue
                if label == TICK_LABEL:
                    if idx.is_tick(qn) and j == 0:
                        matched = True
                        break
                    continue
                for other, q2 in idx.edges(qn):
                    if other != label:
                        continue
                    if rel((target, q2)):
                        matched = True
                        break
                    if blocked is None:
                        blocked = (target, q2) if side == "left" else (q2, target)
                if matched:
                    break
            if not matched:
                return Failure("transfer", side, label, n, t1, target, blocked)
        for n in range(1, limit + 1):
            if reach is None:
                reach = self._reach(t1, t2, limit, rel)
            if not any(j <= n and idx.idle_bound(q) >= n - j for q, j in reach):
                return Failure("idling", side, None, n, t1)
        return None


def _solver(index: StampedIndex, dormancy_aware: bool) -> PairSolver:
    sigs = _signatures(index)

    def prefilter(pair: Pair) -> bool:
        a, b = sigs[pair[0]], sigs[pair[1]]
        return a.visible <= b.weak and b.visible <= a.weak

    return PairSolver(_StampedCheck(index, dormancy_aware), prefilter=prefilter)


def _ts_root_failure(index: StampedIndex, solver: PairSolver, s1: int, s2: int) -> Optional[Failure]:
    """Every a[n] step must be matched by an a[n] step with related targets."""
    for side, (x, y) in (("left", (s1, s2)), ("right", (s2, s1))):
        ymoves = index.stamped_moves(y)
        for label, n, target in index.stamped_moves(x):
            ok = False
            for other, m, target2 in ymoves:
                if other != label or m != n:
                    continue
                if target is None:
                    ok = True
                    break
                pair = (target, target2) if side == "left" else (target2, target)
                if solver.holds(pair):
                    ok = True
                    break
            if not ok:
                return Failure("root", side, label, n, x, target)
    return None


def _rooted(l: TwoPhaseLts, s1: int, s2: int, dormancy_aware: bool, name: str) -> Verdict:
    index = StampedIndex(l)
    solver = _solver(index, dormancy_aware)
    if not solver.holds((s1, s2)):
        return Verdict(name, NO, evidence=_evidence(solver, (s1, s2)))
    failure = _ts_root_failure(index, solver, s1, s2)
    if failure is not None:
        return Verdict(name, NO, evidence=failure.describe())
    logger.debug(f"{name}: {len(solver.relation())} pairs after {solver.checks} checks (horizon {index.horizon})")
    return Verdict(name, YES, witness=solver.relation())


def rooted_branching_ts(l: TwoPhaseLts, s1: int, s2: int) -> Verdict:
    """
    Rooted time-stamped branching bisimilarity.

    Authoritative check for rooted branching bisimilarity: the two-phase and
    time-stamped rooted notions coincide.
    """
    return _rooted(l, s1, s2, dormancy_aware=False, name="rb-ts")


def dormancy_aware_rb(l: TwoPhaseLts, s1: int, s2: int) -> Verdict:
    """
    Rooted dormancy-aware branching bisimilarity.

    A τ-step into a state that cannot act in the current time slice imposes no
    relation obligation, neither as a stuttering step nor as an intermediate
    step of a matching path.
    """
    return _rooted(l, s1, s2, dormancy_aware=True, name="da-rb")


def ts_branching_bisim(l: TwoPhaseLts, s1: int, s2: int, dormancy_aware: bool = False) -> Verdict:
    """Unrooted membership, used by the property suites."""
    index = StampedIndex(l)
    solver = _solver(index, dormancy_aware)
    name = "da" if dormancy_aware else "b-ts"
    if solver.holds((s1, s2)):
        return Verdict(name, YES, witness=solver.relation())
    return Verdict(name, NO, evidence=_evidence(solver, (s1, s2)))
