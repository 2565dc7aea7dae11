"""
Canonical forms modulo A1, A2, A3 and A6DR.

Alternative compositions are flattened, summands sorted by the structural
order of `terms.sort_key`, duplicates merged and δ̲ summands dropped when
another summand remains. Right-hand sides of recursion specifications are
canonicalized as well, so two constants with the same canonical equations
are the same state.
"""
from functools import lru_cache
from typing import List

from .terms import (
    Alt, DELTA_ACT, Rec, RecSpec, Term, alt_all, rebuild, sort_key,
)


def summands(t: Term) -> List[Term]:
    """Top-level summands of t (A1/A2 flattening), without canonicalizing them."""
    out: List[Term] = []
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Alt):
            stack.append(s.right)
            stack.append(s.left)
        else:
            out.append(s)
    return out


@lru_cache(maxsize=None)
def canonicalize_spec(spec: RecSpec) -> RecSpec:
    return RecSpec.from_dict({v: canonicalize(body) for v, body in spec.equations}, spec.name)


@lru_cache(maxsize=None)
def canonicalize(t: Term) -> Term:
    if isinstance(t, Alt):
        seen = {}
        for s in summands(t):
            c = canonicalize(s)
            seen.setdefault(c, None)
        parts = [s for s in seen if s != DELTA_ACT] or [DELTA_ACT]
        parts.sort(key=sort_key)
        return alt_all(parts)
    if isinstance(t, Rec):
        return Rec(t.var, canonicalize_spec(t.spec))
    children = t.children()
    if not children:
        return t
    return rebuild(t, tuple(canonicalize(c) for c in children))
