"""
Two-phase operational semantics.

Action steps follow the current-time-slice rules; the σ-successor is a
deterministic partial function computed structurally, which is how the rules
with negative premises read once time determinism is taken into account. The
time-stamped view is derived from both: an a-step with stamp n is an a-step of
the σⁿ-derivative.
"""
import logging
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, List, NamedTuple, Optional, Set

from .canon import canonicalize
from .errors import RewriteError, TermError
from .recursion import expand_time_iteration, require_guarded
from .terms import (
    Abstr, Act, ActionTable, Alt, CommMerge, DELTA, DELTA_ACT, Delay, Encap, LeftMerge,
    Par, Rec, RecSpec, Seq, Shift, TAU, TICK, Term, Terminated, TimeFree, TimeIter,
    Timeout, Var, alt_all, delayable_var, is_delayable, rebuild, subterms, unfold,
)

logger = logging.getLogger(__name__)


class Step(NamedTuple):
    label: str
    target: Term


class StampedStep(NamedTuple):
    label: str
    stamp: int
    target: Term


class StampedView(NamedTuple):
    """Stamped steps up to a bound; truncated is set when σ is still possible at the bound."""
    steps: FrozenSet[StampedStep]
    truncated: bool


@lru_cache(maxsize=None)
def sigma_step(t: Term) -> Optional[Term]:
    """The unique σ-successor of t, or None when t cannot idle."""
    if isinstance(t, Delay):
        return t.body
    if isinstance(t, (Act, Terminated, Timeout)):
        return None
    if isinstance(t, Alt):
        left, right = sigma_step(t.left), sigma_step(t.right)
        if left is not None and right is not None:
            return Alt(left, right)
        return left if left is not None else right
    if isinstance(t, Seq):
        left = sigma_step(t.left)
        return None if left is None else Seq(left, t.right)
    if isinstance(t, (Par, LeftMerge, CommMerge)):
        left = sigma_step(t.left)
        if left is None:
            return None
        right = sigma_step(t.right)
        return None if right is None else type(t)(left, right)
    if isinstance(t, (Encap, Abstr)):
        body = sigma_step(t.body)
        return None if body is None else type(t)(t.actions, body)
    if isinstance(t, Rec):
        require_guarded(t.spec)
        return sigma_step(unfold(t))
    if isinstance(t, Var):
        raise TermError(f"open term: free variable {t.name}")
    raise TermError(f"{type(t).__name__} must be desugared before computing semantics")


def idling(t: Term, n: int) -> bool:
    """True iff the σⁿ-derivative of t exists."""
    current = t
    for _ in range(n):
        current = sigma_step(current)
        if current is None:
            return False
        current = canonicalize(current)
    return True


def sigma_derivative(t: Term, n: int) -> Optional[Term]:
    current = t
    for _ in range(n):
        current = sigma_step(current)
        if current is None:
            return None
        current = canonicalize(current)
    return current


class Semantics:
    """
    Action steps for one action table.

    Results are memoized per instance; the table determines communication, so
    memo entries are never shared across tables.

    Example:
        sem = Semantics(ActionTable.build(["a", "b", "c"], {("a", "b"): "c"}))
        sem.action_steps(Par(Act("a"), Act("b")))
    """

    def __init__(self, table: ActionTable):
        self.table = table
        self._steps: Dict[Term, FrozenSet[Step]] = {}

    def action_steps(self, t: Term) -> FrozenSet[Step]:
        cached = self._steps.get(t)
        if cached is None:
            cached = frozenset(self._compute(t))
            self._steps[t] = cached
        return cached

    def _compute(self, t: Term) -> Iterable[Step]:
        if isinstance(t, Act):
            if t.name == DELTA:
                return ()
            if t.name != TAU and t.name not in self.table.actions:
                raise TermError(f"unknown action {t.name}")
            return (Step(t.name, TICK),)
        if isinstance(t, (Terminated, Delay)):
            return ()
        if isinstance(t, Alt):
            return self.action_steps(t.left) | self.action_steps(t.right)
        if isinstance(t, Seq):
            return [Step(a, t.right if x is TICK else Seq(x, t.right)) for a, x in self.action_steps(t.left)]
        if isinstance(t, Par):
            out = self._interleave(t.left, t.right, left_only=False)
            out.extend(self._communications(t.left, t.right))
            return out
        if isinstance(t, LeftMerge):
            return self._interleave(t.left, t.right, left_only=True)
        if isinstance(t, CommMerge):
            return self._communications(t.left, t.right)
        if isinstance(t, Encap):
            return [Step(a, x if x is TICK else Encap(t.actions, x))
                    for a, x in self.action_steps(t.body) if a not in t.actions]
        if isinstance(t, Abstr):
            return [Step(TAU if a in t.actions else a, x if x is TICK else Abstr(t.actions, x))
                    for a, x in self.action_steps(t.body)]
        if isinstance(t, Timeout):
            return self.action_steps(t.body)
        if isinstance(t, Rec):
            require_guarded(t.spec)
            return self.action_steps(unfold(t))
        if isinstance(t, Var):
            raise TermError(f"open term: free variable {t.name}")
        raise TermError(f"{type(t).__name__} must be desugared before computing semantics")

    def _interleave(self, x: Term, y: Term, left_only: bool) -> List[Step]:
        out = [Step(a, y if x2 is TICK else Par(x2, y)) for a, x2 in self.action_steps(x)]
        if not left_only:
            out.extend(Step(b, x if y2 is TICK else Par(x, y2)) for b, y2 in self.action_steps(y))
        return out

    def _communications(self, x: Term, y: Term) -> List[Step]:
        out = []
        right = self.action_steps(y)
        for a, x2 in self.action_steps(x):
            for b, y2 in right:
                c = self.table.communicate(a, b)
                if c is None:
                    continue
                if x2 is TICK:
                    out.append(Step(c, y2))
                elif y2 is TICK:
                    out.append(Step(c, x2))
                else:
                    out.append(Step(c, Par(x2, y2)))
        return out

    def stamped_steps(self, t: Term, bound: int) -> StampedView:
        """
        Time-stamped steps with stamps 0..bound.

        Args:
            t: Closed, desugared term.
            bound: Largest stamp to enumerate.

        Returns:
            StampedView whose truncated flag tells the caller that t can still
            idle at the bound (a σ-cycle or a long prefix), so the finite lasso
            should be used instead.
        """
        steps: Set[StampedStep] = set()
        current = t
        stamp = 0
        while True:
            for a, x in self.action_steps(current):
                steps.add(StampedStep(a, stamp, x))
            nxt = sigma_step(current)
            if nxt is None:
                return StampedView(frozenset(steps), False)
            if stamp == bound:
                return StampedView(frozenset(steps), True)
            current = canonicalize(nxt)
            stamp += 1

    def activeness(self, states: Iterable[Term]) -> Callable[[Term], bool]:
        """
        Activeness predicate over a set of states closed under step targets.

        A state is active if it can do an observable action now, terminate now,
        or do a τ now to an active state; √ itself is not active.
        """
        nodes = list(states)
        active = least_active(nodes, lambda s: self.action_steps(s), lambda s: s is TICK)
        return lambda t: t in active


def least_active(
    nodes: Iterable[Hashable],
    steps_of: Callable[[Hashable], Iterable],
    is_tick: Callable[[Hashable], bool],
) -> FrozenSet:
    """Least fixpoint of the activeness clauses over an arbitrary step function."""
    nodes = [n for n in nodes if not is_tick(n)]
    succ = {n: list(steps_of(n)) for n in nodes}
    active: Set = set()
    changed = True
    while changed:
        changed = False
        for n in nodes:
            if n in active:
                continue
            for label, target in succ[n]:
                if is_tick(target) or label != TAU or target in active:
                    active.add(n)
                    changed = True
                    break
    return frozenset(active)


# --- shift and time-free projection ----------------------------------------------

def _seq(left: Term, right: Term) -> Term:
    return DELTA_ACT if left == DELTA_ACT else Seq(left, right)


def _shift(t: Term) -> Term:
    if isinstance(t, Act):
        return DELTA_ACT
    if isinstance(t, Alt):
        return Alt(_shift(t.left), _shift(t.right))
    if isinstance(t, Seq):
        return _seq(_shift(t.left), t.right)
    if isinstance(t, Delay):
        return t.body
    if isinstance(t, Rec):
        require_guarded(t.spec)
        return _shift(unfold(t))
    if isinstance(t, (Encap, Abstr)):
        return type(t)(t.actions, _shift(t.body))
    if isinstance(t, Timeout):
        return DELTA_ACT
    if isinstance(t, (Par, LeftMerge, CommMerge)):
        derivative = sigma_step(t)
        return DELTA_ACT if derivative is None else derivative
    if isinstance(t, (Shift, TimeFree, TimeIter)):
        return _shift(desugar(t))
    if isinstance(t, Var):
        raise TermError(f"shift applied to an open term (free variable {t.name})")
    raise TermError(f"shift of {type(t).__name__} is undefined")


def shift_term(t: Term) -> Term:
    """
    One-time-slice shift by orienting its defining axioms left to right.

    shift(a̲) = δ̲, shift(x + y) = shift(x) + shift(y), shift(x·y) = shift(x)·y,
    shift(σ(x)) = x; δ̲·x collapses to δ̲. Merges take their σ-derivative.
    """
    return canonicalize(_shift(t))


def _tf_action(name: str) -> Rec:
    v = delayable_var(name)
    return Rec(v, RecSpec.from_dict({v: Alt(Act(name), Delay(Var(v)))}))


def _time_free(t: Term) -> Term:
    if isinstance(t, Act):
        return _tf_action(t.name)
    if isinstance(t, Rec) and is_delayable(t) is not None:
        return _tf_action(is_delayable(t))
    if isinstance(t, (Alt, Seq)):
        return type(t)(_time_free(t.left), _time_free(t.right))
    if isinstance(t, Delay):
        return _time_free(t.body)
    raise TermError(f"time-free projection of {type(t).__name__}")


def _sequential(t: Term) -> bool:
    return all(
        isinstance(s, (Act, Alt, Seq, Delay)) or (isinstance(s, Rec) and is_delayable(s) is not None)
        for s in subterms(t)
    )


def _deep_subterms(t: Term) -> Iterable[Term]:
    for s in subterms(t):
        yield s
        if isinstance(s, Rec):
            for _, body in s.spec.equations:
                yield from _deep_subterms(body)


def _project_state_space(t: Term) -> Rec:
    """
    tf of a recursive term, read off its state space: one variable per state,
    whose summands are the time-free actions of the state's whole σ-chain.
    """
    from .statespace import explore, time_free_project

    nodes = list(_deep_subterms(t))
    if any(isinstance(s, (Par, LeftMerge, CommMerge)) for s in nodes):
        raise RewriteError("time-free projection of a recursive merge needs an action table")
    names = {s.name for s in nodes if isinstance(s, Act) and s.name not in (TAU, DELTA)}
    lts = time_free_project(explore(t, ActionTable.build(sorted(names))))
    equations: Dict[str, Term] = {}
    for sid in range(len(lts)):
        if lts.is_tick(sid):
            continue
        items = [
            _tf_action(label) if lts.is_tick(target) else Seq(_tf_action(label), Var(f"T{target}"))
            for label, target in lts.edges[sid]
        ]
        equations[f"T{sid}"] = alt_all(items) if items else _tf_action(DELTA)
    logger.debug(f"time-free projection through {len(equations)} states")
    return Rec(f"T{lts.root}", RecSpec.from_dict(equations))


def time_free_term(t: Term) -> Term:
    """
    Time-free projection.

    tf(a̲) = ⟨X | X = a̲ + σ(X)⟩, tf distributes over + and ·, tf(σ(x)) = tf(x);
    a delayable action is its own projection. Other recursion-free operators
    are first eliminated to a basic term. Terms with other recursion are
    projected through their state space.

    Raises:
        RewriteError: for merges without an action table.
    """
    if _sequential(t):
        return canonicalize(_time_free(t))
    if any(isinstance(s, Rec) for s in subterms(t)):
        return _project_state_space(t)
    from .rewrite.basic import to_basic_term
    return canonicalize(_time_free(to_basic_term(t)))


@lru_cache(maxsize=None)
def desugar(t: Term) -> Term:
    """Remove TimeIter, Shift and TimeFree nodes (innermost first)."""
    if isinstance(t, TimeIter):
        return desugar(expand_time_iteration(t))
    if isinstance(t, Shift):
        return shift_term(desugar(t.body))
    if isinstance(t, TimeFree):
        return time_free_term(desugar(t.body))
    if isinstance(t, Rec):
        if not _needs_desugar(t):
            return t
        return Rec(t.var, RecSpec.from_dict({v: desugar(b) for v, b in t.spec.equations}, t.spec.name))
    children = t.children()
    if not children or not _needs_desugar(t):
        return t
    return rebuild(t, tuple(desugar(c) for c in children))


@lru_cache(maxsize=None)
def _needs_desugar(t: Term) -> bool:
    if isinstance(t, (TimeIter, Shift, TimeFree)):
        return True
    if isinstance(t, Rec):
        return any(_needs_desugar(b) for _, b in t.spec.equations)
    return any(_needs_desugar(c) for c in t.children())


def action_steps(t: Term, table: ActionTable) -> FrozenSet[Step]:
    """Convenience wrapper: action steps of t under table."""
    return Semantics(table).action_steps(t)
