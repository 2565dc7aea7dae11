"""
ts-basic terms: sums of σⁿ(a̲)·t and σᵐ(b̲).

Obtained from a basic term by pushing σ inward with σ(x + y) = σ(x) + σ(y)
and σ(x·y) = σ(x)·y.
"""
from typing import List, Optional

from ..canon import canonicalize, summands
from ..terms import Act, ActionTable, DELTA, Delay, Seq, Term, alt_all, sigma_n
from .basic import is_basic, parts, to_basic_term


def _ts(b: Term, stamp: int) -> List[Term]:
    prefixed, delay = parts(b)
    out: List[Term] = []
    for a, t in prefixed:
        head = sigma_n(Act(a), stamp)
        out.append(head if t is None else Seq(head, to_ts_basic(t)))
    if delay is not None:
        inner = _ts(delay, stamp + 1)
        # σ^{n+1}(δ̲) keeps the ability to idle
        out.extend(inner or [sigma_n(Act(DELTA), stamp + 1)])
    return out


def to_ts_basic(t: Term, table: Optional[ActionTable] = None) -> Term:
    """
    ts-basic form of a basic term (other closed recursion-free terms are
    eliminated first).
    """
    if not is_basic(t):
        t = to_basic_term(t, table)
    return canonicalize(alt_all(_ts(canonicalize(t), 0)))


def _stamped_act(t: Term) -> Optional[Act]:
    while isinstance(t, Delay):
        t = t.body
    return t if isinstance(t, Act) else None


def is_ts_basic(t: Term) -> bool:
    """Recognizer for ts-basic terms."""
    for s in summands(t):
        if isinstance(s, Seq):
            head = _stamped_act(s.left)
            if head is None or head.name == DELTA or not is_ts_basic(s.right):
                return False
        elif _stamped_act(s) is None:
            return False
    return True
