"""
Elimination of closed recursion-free terms to basic terms.

A basic term is built from a̲ (a an action, τ or δ), a̲·t (a an action or τ),
σ(t) and +. Every operator is pushed through the summands of its already
eliminated operands, following the axioms left to right:

- δ̲·x = δ̲, (x + y)·z = x·z + y·z, (x·y)·z = x·(y·z), σ(x)·y = σ(x·y)
- σ(x) + σ(y) = σ(x + y)
- x ∥ y = x ⫦ y + y ⫦ x + x | y
- a̲ ⫦ x = a̲·x, a̲·x ⫦ y = a̲·(x ∥ y), σ(x) ⫦ (ν(y) + σ(z)) = σ(x ⫦ z), σ(x) ⫦ ν(y) = δ̲
- a̲·x | b̲·y = γ(a, b)·(x ∥ y), σ(x) | σ(y) = σ(x | y), a̲ | σ(y) = δ̲
- ∂_H, τ_I and ν distribute over + and through prefixes; ν(σ(x)) = δ̲
- shift(σ(x)) = x, shift(a̲·x) = δ̲

Results are kept in canonical form (A1, A2, A3, A6DR), so each basic term has
at most one σ summand.
"""
import logging
from typing import Dict, List, Optional, Tuple

from ..canon import canonicalize, summands
from ..conf import REWRITE_STEP_BUDGET
from ..errors import RewriteError
from ..terms import (
    Abstr, Act, ActionTable, Alt, CommMerge, DELTA, DELTA_ACT, Delay, Encap, LeftMerge,
    Par, Rec, Seq, Shift, TAU, Term, TimeFree, TimeIter, Timeout, Var, alt_all,
)

logger = logging.getLogger(__name__)

# (action, continuation or None for a terminating summand), σ-part or None
Parts = Tuple[List[Tuple[str, Optional[Term]]], Optional[Term]]


def parts(b: Term) -> Parts:
    """Split a canonical basic term into prefixed summands and its σ-part."""
    prefixed: List[Tuple[str, Optional[Term]]] = []
    delays: List[Term] = []
    for s in summands(b):
        if isinstance(s, Act):
            if s.name != DELTA:
                prefixed.append((s.name, None))
        elif isinstance(s, Seq) and isinstance(s.left, Act):
            if s.left.name != DELTA:
                prefixed.append((s.left.name, s.right))
        elif isinstance(s, Delay):
            delays.append(s.body)
        else:
            raise RewriteError(f"not a basic term: {s}")
    delay = None
    if delays:
        delay = delays[0] if len(delays) == 1 else canonicalize(alt_all(delays))
    return prefixed, delay


def build(prefixed: List[Tuple[str, Optional[Term]]], delay: Optional[Term]) -> Term:
    items: List[Term] = [Act(a) if t is None else Seq(Act(a), t) for a, t in prefixed]
    if delay is not None:
        items.append(Delay(delay))
    return canonicalize(alt_all(items))


class Eliminator:
    """
    Bottom-up elimination with memoization and a step budget.

    Args:
        table: Communication function for merges (only needed when merges occur).
        budget: Maximal number of operator applications.
    """

    def __init__(self, table: Optional[ActionTable] = None, budget: int = REWRITE_STEP_BUDGET):
        self.table = table
        self.budget = budget
        self.steps = 0
        self._memo: Dict[Tuple, Term] = {}

    def _tick(self) -> None:
        self.steps += 1
        if self.steps > self.budget:
            raise RewriteError(f"rewrite budget of {self.budget} steps exhausted")

    def _cached(self, key: Tuple, compute) -> Term:
        result = self._memo.get(key)
        if result is None:
            self._tick()
            result = compute()
            self._memo[key] = result
        return result

    def eliminate(self, t: Term) -> Term:
        return self._cached(("elim", t), lambda: self._eliminate(t))

    def _eliminate(self, t: Term) -> Term:
        if isinstance(t, Act):
            return t
        if isinstance(t, Alt):
            return self.alt(self.eliminate(t.left), self.eliminate(t.right))
        if isinstance(t, Seq):
            return self.seq(self.eliminate(t.left), self.eliminate(t.right))
        if isinstance(t, Delay):
            return Delay(self.eliminate(t.body))
        if isinstance(t, Par):
            return self.merge(self.eliminate(t.left), self.eliminate(t.right))
        if isinstance(t, LeftMerge):
            return self.left_merge(self.eliminate(t.left), self.eliminate(t.right))
        if isinstance(t, CommMerge):
            return self.comm_merge(self.eliminate(t.left), self.eliminate(t.right))
        if isinstance(t, Encap):
            return self.encap(t.actions, self.eliminate(t.body))
        if isinstance(t, Abstr):
            return self.abstr(t.actions, self.eliminate(t.body))
        if isinstance(t, Timeout):
            prefixed, _ = parts(self.eliminate(t.body))
            return build(prefixed, None)
        if isinstance(t, Shift):
            _, delay = parts(self.eliminate(t.body))
            return DELTA_ACT if delay is None else delay
        if isinstance(t, (Rec, Var)):
            raise RewriteError("not eliminable: term contains a recursion constant or variable")
        if isinstance(t, (TimeFree, TimeIter)):
            raise RewriteError(f"not eliminable: {type(t).__name__} denotes a recursion constant")
        raise RewriteError(f"cannot eliminate {type(t).__name__}")

    def alt(self, x: Term, y: Term) -> Term:
        px, dx = parts(x)
        py, dy = parts(y)
        if dx is not None and dy is not None:
            delay = self.alt(dx, dy)
        else:
            delay = dx if dx is not None else dy
        return build(px + py, delay)

    def seq(self, x: Term, y: Term) -> Term:
        def compute() -> Term:
            px, dx = parts(x)
            prefixed = [(a, y if t is None else self.seq(t, y)) for a, t in px]
            delay = None if dx is None else self.seq(dx, y)
            return build(prefixed, delay)
        return self._cached(("seq", x, y), compute)

    def merge(self, x: Term, y: Term) -> Term:
        def compute() -> Term:
            return self.alt(self.alt(self.left_merge(x, y), self.left_merge(y, x)), self.comm_merge(x, y))
        return self._cached(("merge", x, y), compute)

    def left_merge(self, x: Term, y: Term) -> Term:
        def compute() -> Term:
            px, dx = parts(x)
            _, dy = parts(y)
            prefixed = [(a, y if t is None else self.merge(t, y)) for a, t in px]
            delay = None
            if dx is not None and dy is not None:
                delay = self.left_merge(dx, dy)
            return build(prefixed, delay)
        return self._cached(("lmerge", x, y), compute)

    def comm_merge(self, x: Term, y: Term) -> Term:
        def compute() -> Term:
            px, dx = parts(x)
            py, dy = parts(y)
            prefixed: List[Tuple[str, Optional[Term]]] = []
            for a, tx in px:
                for b, ty in py:
                    c = self._communicate(a, b)
                    if c is None:
                        continue
                    if tx is None:
                        prefixed.append((c, ty))
                    elif ty is None:
                        prefixed.append((c, tx))
                    else:
                        prefixed.append((c, self.merge(tx, ty)))
            delay = None
            if dx is not None and dy is not None:
                delay = self.comm_merge(dx, dy)
            return build(prefixed, delay)
        return self._cached(("cmerge", x, y), compute)

    def _communicate(self, a: str, b: str) -> Optional[str]:
        if self.table is None:
            raise RewriteError("communication merge needs an action table")
        return self.table.communicate(a, b)

    def encap(self, blocked: frozenset, x: Term) -> Term:
        def compute() -> Term:
            px, dx = parts(x)
            prefixed = [(a, None if t is None else self.encap(blocked, t)) for a, t in px if a not in blocked]
            return build(prefixed, None if dx is None else self.encap(blocked, dx))
        return self._cached(("encap", blocked, x), compute)

    def abstr(self, hidden: frozenset, x: Term) -> Term:
        def compute() -> Term:
            px, dx = parts(x)
            prefixed = [(TAU if a in hidden else a, None if t is None else self.abstr(hidden, t)) for a, t in px]
            return build(prefixed, None if dx is None else self.abstr(hidden, dx))
        return self._cached(("abstr", hidden, x), compute)


def to_basic_term(t: Term, table: Optional[ActionTable] = None, budget: int = REWRITE_STEP_BUDGET) -> Term:
    """
    Basic term derivably equal to the closed, recursion-free term t.

    Raises:
        RewriteError: "not eliminable" when t contains a recursion constant,
            or when the step budget is exhausted.
    """
    eliminator = Eliminator(table, budget)
    result = eliminator.eliminate(canonicalize(t))
    logger.debug(f"eliminated to a basic term in {eliminator.steps} steps")
    return result


def is_basic(t: Term) -> bool:
    """Recognizer for basic terms."""
    if isinstance(t, Act):
        return True
    if isinstance(t, Seq):
        return isinstance(t.left, Act) and t.left.name != DELTA and is_basic(t.right)
    if isinstance(t, Delay):
        return is_basic(t.body)
    if isinstance(t, Alt):
        return is_basic(t.left) and is_basic(t.right)
    return False
