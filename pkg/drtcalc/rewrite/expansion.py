"""
One step of the expansion theorem for merges under handshaking communication.
"""
import logging
from itertools import combinations
from typing import List

from ..errors import RewriteError
from ..terms import ActionTable, CommMerge, LeftMerge, Par, Term, alt_all

logger = logging.getLogger(__name__)


def merge_components(t: Term) -> List[Term]:
    """x₁, ..., xₙ of a (possibly nested) merge x₁ ∥ ... ∥ xₙ."""
    if isinstance(t, Par):
        return merge_components(t.left) + merge_components(t.right)
    return [t]


def par_all(terms: List[Term]) -> Term:
    result = terms[-1]
    for t in reversed(terms[:-1]):
        result = Par(t, result)
    return result


def expand_merge(t: Term, table: ActionTable) -> Term:
    """
    x₁ ∥ ... ∥ xₙ = Σᵢ xᵢ ⫦ (∥_{j≠i} xⱼ) + Σ_{i<j} (xᵢ | xⱼ) ⫦ (∥_{k≠i,j} xₖ).

    For two components this is x ⫦ y + y ⫦ x + x | y. A term that is not a
    merge is returned unchanged.

    Raises:
        RewriteError: when table admits more than binary communication.
    """
    if not table.is_handshaking():
        raise RewriteError("expansion requires handshaking communication")
    xs = merge_components(t)
    n = len(xs)
    if n < 2:
        return t
    summands: List[Term] = []
    for i in range(n):
        rest = xs[:i] + xs[i + 1:]
        summands.append(LeftMerge(xs[i], par_all(rest)))
    for i, j in combinations(range(n), 2):
        pair = CommMerge(xs[i], xs[j])
        rest = [x for k, x in enumerate(xs) if k not in (i, j)]
        summands.append(LeftMerge(pair, par_all(rest)) if rest else pair)
    logger.debug(f"expanded a merge of {n} components into {len(summands)} summands")
    return alt_all(summands)
