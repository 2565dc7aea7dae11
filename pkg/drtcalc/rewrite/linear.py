"""
Linearization: a linear recursive specification read off the state space.

A linear term is a sum of a̲·X, a̲ and σ(X) (δ̲ for the empty sum). Every
explored state gets a variable X<id>; its equation lists the action edges,
with terminating edges as bare actions, and the σ-successor.
"""
import logging
from typing import List, Tuple

from ..canon import summands
from ..conf import DEFAULT_MAX_STATES
from ..errors import RewriteError, StateBoundExceeded
from ..statespace import explore
from ..terms import Abstr, Act, ActionTable, DELTA, Delay, Rec, RecSpec, Seq, Term, Var, alt_all, subterms

logger = logging.getLogger(__name__)


def state_var(sid: int) -> str:
    return f"X{sid}"


def _contains_abstraction(t: Term) -> bool:
    for s in subterms(t):
        if isinstance(s, Abstr):
            return True
        if isinstance(s, Rec) and any(_contains_abstraction(b) for _, b in s.spec.equations):
            return True
    return False


def linearize(t: Term, table: ActionTable, max_states: int = DEFAULT_MAX_STATES) -> Tuple[RecSpec, str]:
    """
    Linear specification with the same state space as t.

    Returns:
        (spec, root variable).

    Raises:
        RewriteError: when t contains an abstraction operator or its state
            space exceeds max_states.
    """
    if _contains_abstraction(t):
        raise RewriteError("cannot linearize a term containing an abstraction operator")
    try:
        lts = explore(t, table, max_states)
    except StateBoundExceeded as exc:
        raise RewriteError(f"cannot linearize: {exc}") from exc
    if lts.is_tick(lts.root):
        raise RewriteError("cannot linearize the terminated process")
    equations = {}
    for sid in range(len(lts)):
        if lts.is_tick(sid):
            continue
        items: List[Term] = []
        for label, target in lts.edges[sid]:
            act = Act(label)
            items.append(act if lts.is_tick(target) else Seq(act, Var(state_var(target))))
        nxt = lts.sigma_next[sid]
        if nxt is not None:
            items.append(Delay(Var(state_var(nxt))))
        equations[state_var(sid)] = alt_all(items)
    root = state_var(lts.root)
    logger.debug(f"linearized into {len(equations)} equations")
    return RecSpec.from_dict(equations, "linear"), root


def is_linear_term(t: Term) -> bool:
    for s in summands(t):
        if isinstance(s, Act):
            continue
        if isinstance(s, Seq) and isinstance(s.left, Act) and s.left.name != DELTA and isinstance(s.right, Var):
            continue
        if isinstance(s, Delay) and isinstance(s.body, Var):
            continue
        return False
    return True


def is_linear(spec: RecSpec) -> bool:
    """Recognizer: every right-hand side is a linear term."""
    return all(is_linear_term(body) for _, body in spec.equations)
