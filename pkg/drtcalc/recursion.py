"""
Recursion utilities: guardedness, time iteration and flattening of nested specs.
"""
import logging
from functools import lru_cache
from typing import Dict, List, Mapping, Set, Tuple

from .conf import GUARD_UNFOLD_DEPTH
from .errors import DegenerateIterationError, GuardednessError, TermError
from .terms import (
    Abstr, Act, Alt, CommMerge, Delay, Encap, LeftMerge, Par, Rec, RecSpec,
    Seq, TAU, Term, TimeIter, Timeout, Var, fresh_name, free_vars,
    rebuild, rename_apart, sigma_n,
)

logger = logging.getLogger(__name__)


def guards(t: Term) -> bool:
    """
    True if t cannot terminate before an observable action or a time step.

    A variable in the right operand of x·y is guarded when guards(x) holds.
    """
    if isinstance(t, Act):
        return t.name != TAU
    if isinstance(t, Delay):
        return True
    if isinstance(t, Seq):
        return guards(t.left) or guards(t.right)
    if isinstance(t, Alt):
        return guards(t.left) and guards(t.right)
    if isinstance(t, (Timeout, Encap)):
        return guards(t.body)
    if isinstance(t, (Par, LeftMerge, CommMerge)):
        return guards(t.left) or guards(t.right)
    if isinstance(t, TimeIter):
        return t.period > 0 and guards(t.body)
    if isinstance(t, Rec):
        # variables of the spec count as unguarded, so this terminates
        return guards(t.spec.get(t.var))
    # Var, Abstr, Shift, TimeFree
    return False


class _Unguarded(Exception):
    """A variable occurs below an abstraction operator."""


def _expand(t: Term, eqs: Mapping[str, Term], guarded: bool, under_abstr: bool, found: List[str]) -> Term:
    """Replace unguarded variable occurrences by their right-hand sides."""
    if isinstance(t, Var):
        if t.name not in eqs:
            return t
        if under_abstr:
            raise _Unguarded(t.name)
        if guarded:
            return t
        found.append(t.name)
        return eqs[t.name]
    if isinstance(t, Rec):
        return t
    if isinstance(t, Delay):
        return Delay(_expand(t.body, eqs, True, under_abstr, found))
    if isinstance(t, Seq):
        left = _expand(t.left, eqs, guarded, under_abstr, found)
        right = _expand(t.right, eqs, guarded or guards(t.left), under_abstr, found)
        return Seq(left, right)
    if isinstance(t, Abstr):
        return Abstr(t.actions, _expand(t.body, eqs, guarded, True, found))
    children = t.children()
    if not children:
        return t
    return rebuild(t, tuple(_expand(c, eqs, guarded, under_abstr, found) for c in children))


def check_guarded(spec: RecSpec, unfold_depth: int = GUARD_UNFOLD_DEPTH) -> bool:
    """
    Syntactic guardedness after bounded unfolding.

    Every variable occurrence must lie below σ or in the continuation of a
    guarding prefix (an observable action), with no abstraction operator above
    it. Unguarded occurrences are replaced by their right-hand sides, at most
    unfold_depth times per equation.

    Args:
        spec: The recursive specification.
        unfold_depth: Number of unfolding rounds before giving up.

    Returns:
        True if every equation becomes guarded. False means "not syntactically
        guarded at this depth", not a proof of unguardedness.
    """
    eqs = spec.as_dict()
    for var, body in spec.equations:
        current = body
        for _ in range(unfold_depth + 1):
            found: List[str] = []
            try:
                current = _expand(current, eqs, False, False, found)
            except _Unguarded as exc:
                logger.debug(f"{var}: {exc.args[0]} occurs below an abstraction")
                return False
            if not found:
                break
        else:
            logger.debug(f"{var}: not syntactically guarded at depth {unfold_depth}")
            return False
    return True


@lru_cache(maxsize=None)
def _guarded_cached(spec: RecSpec, depth: int) -> bool:
    return check_guarded(spec, depth)


def require_guarded(spec: RecSpec, unfold_depth: int = GUARD_UNFOLD_DEPTH) -> None:
    if not _guarded_cached(spec, unfold_depth):
        label = spec.name or ", ".join(sorted(spec.variables))
        raise GuardednessError(f"specification {label} is not syntactically guarded at depth {unfold_depth}")


def expand_time_iteration(t: Term) -> Term:
    """
    Replace every σ^{*n}(s) by ⟨T | T = s + σ^n(T)⟩ with T fresh for s.

    Raises:
        DegenerateIterationError: for n = 0.
    """
    if isinstance(t, TimeIter):
        if t.period == 0:
            raise DegenerateIterationError("degenerate iteration: sigma*0 gives the unguarded X = t + X")
        body = expand_time_iteration(t.body)
        var = fresh_name("T", free_vars(body))
        return Rec(var, RecSpec.from_dict({var: Alt(body, sigma_n(Var(var), t.period))}))
    if isinstance(t, Rec):
        if not any(_has_iteration(b) for _, b in t.spec.equations):
            return t
        eqs = {v: expand_time_iteration(b) for v, b in t.spec.equations}
        return Rec(t.var, RecSpec.from_dict(eqs, t.spec.name))
    children = t.children()
    if not children:
        return t
    return rebuild(t, tuple(expand_time_iteration(c) for c in children))


def _has_iteration(t: Term) -> bool:
    if isinstance(t, TimeIter):
        return True
    if isinstance(t, Rec):
        return any(_has_iteration(b) for _, b in t.spec.equations)
    return any(_has_iteration(c) for c in t.children())


def has_nested_recursion(c: Rec, below_abstraction: bool = True) -> bool:
    """
    True if a right-hand side of c mentions a recursion constant. With
    below_abstraction=False, constants under an abstraction operator are ignored.
    """
    return any(_contains_rec(body, below_abstraction) for _, body in c.spec.equations)


def _contains_rec(t: Term, below_abstraction: bool = True) -> bool:
    if isinstance(t, Rec):
        return True
    if isinstance(t, Abstr) and not below_abstraction:
        return False
    return any(_contains_rec(ch, below_abstraction) for ch in t.children())


def flatten_recursion(c: Rec) -> Rec:
    """
    Remove recursion constants from inside a specification.

    Each inner constant ⟨Y|F⟩ is replaced by the variable Y (renamed apart
    from every variable already in use), and F's equations are added to the
    outer specification. Identical inner specifications are merged once.

    A constant below an abstraction operator stays in place (flattened on its
    own): lifting it would leave a variable under τ_I, which is unguarded.

    Example:
        ⟨X | X = a̲·⟨Y | Y = b̲·Y⟩⟩  becomes  ⟨X | X = a̲·Y, Y = b̲·Y⟩
    """
    if not has_nested_recursion(c):
        return c
    require_guarded(c.spec)
    equations: Dict[str, Term] = {}
    taken: Set[str] = set(c.spec.variables)
    merged: Dict[RecSpec, Dict[str, str]] = {}
    pending: List[Tuple[str, Term]] = list(c.spec.equations)

    def keep(t: Term) -> Term:
        if isinstance(t, Rec):
            return flatten_recursion(t)
        children = t.children()
        if not children:
            return t
        return rebuild(t, tuple(keep(ch) for ch in children))

    def lift(t: Term) -> Term:
        if isinstance(t, Abstr):
            return Abstr(t.actions, keep(t.body))
        if isinstance(t, Rec):
            if free_vars(t):
                raise TermError(f"inner recursion constant {t.var} is not closed")
            renaming = merged.get(t.spec)
            if renaming is None:
                require_guarded(t.spec)
                spec, renaming = rename_apart(t.spec, frozenset(taken))
                taken.update(renaming.values())
                merged[t.spec] = renaming
                pending.extend(spec.equations)
            return Var(renaming[t.var])
        children = t.children()
        if not children:
            return t
        return rebuild(t, tuple(lift(ch) for ch in children))

    while pending:
        var, body = pending.pop(0)
        equations[var] = lift(body)
    result = Rec(c.var, RecSpec.from_dict(equations, c.spec.name))
    logger.debug(f"flattened {c.var}: {len(c.spec.equations)} -> {len(equations)} equations")
    return result
