"""
Local greatest-fixpoint computation over state pairs.

A pair is assumed related until its transfer check fails. Each successful
check records which assumed pairs it relied on; when one of those is refuted,
the dependent pairs are checked again. When the work queue drains, the
surviving pairs form a relation in which every pair passes its check, and no
pair of the greatest such relation was ever refuted.
"""
import logging
from collections import defaultdict, deque
from typing import Callable, Deque, Dict, FrozenSet, List, Optional, Set

from .verdict import Failure, Pair

logger = logging.getLogger(__name__)

Related = Callable[[Pair], bool]
PairCheck = Callable[[Pair, Related], Optional[Failure]]


class PairSolver:
    """
    Greatest relation satisfying a pairwise check, explored on demand.

    Args:
        check: Returns None if the pair meets its transfer conditions assuming
            `related` for the pairs it consults, else a Failure.
        prefilter: Cheap necessary condition; pairs failing it are never checked.
    """

    def __init__(self, check: PairCheck, prefilter: Optional[Callable[[Pair], bool]] = None):
        self._check = check
        self._prefilter = prefilter or (lambda pair: True)
        self.status: Dict[Pair, bool] = {}
        self.failures: Dict[Pair, Failure] = {}
        self._dependents: Dict[Pair, Set[Pair]] = defaultdict(set)
        self._queue: Deque[Pair] = deque()
        self.checks = 0

    def _touch(self, pair: Pair) -> bool:
        state = self.status.get(pair)
        if state is None:
            state = bool(self._prefilter(pair))
            self.status[pair] = state
            if state:
                self._queue.append(pair)
            else:
                self.failures[pair] = Failure("signature", "both")
        return state

    def holds(self, pair: Pair) -> bool:
        self._touch(pair)
        self._drain()
        return self.status[pair]

    def _drain(self) -> None:
        while self._queue:
            current = self._queue.popleft()
            if not self.status[current]:
                continue

            def related(other: Pair, _current: Pair = current) -> bool:
                ok = self._touch(other)
                if ok:
                    self._dependents[other].add(_current)
                return ok

            failure = self._check(current, related)
            self.checks += 1
            if failure is None:
                continue
            self.status[current] = False
            self.failures[current] = failure
            for dependent in self._dependents.pop(current, ()):
                if self.status.get(dependent):
                    self._queue.append(dependent)
        logger.debug(f"pair solver: {len(self.status)} pairs touched, {self.checks} checks")

    def relation(self) -> FrozenSet[Pair]:
        """Surviving pairs (valid once `holds` has returned)."""
        return frozenset(p for p, ok in self.status.items() if ok)

    def trace(self, pair: Pair, limit: int = 12) -> List[str]:
        """Labels of a chain of refuted pairs starting at pair, following blocked successors."""
        labels: List[str] = []
        seen = set()
        current: Optional[Pair] = pair
        while current is not None and current not in seen and len(labels) < limit:
            seen.add(current)
            failure = self.failures.get(current)
            if failure is None or failure.label is None:
                break
            stamp = "" if failure.stamp is None else f"[{failure.stamp}]"
            labels.append(f"{failure.side}:{failure.label}{stamp}")
            current = failure.blocked
        return labels
