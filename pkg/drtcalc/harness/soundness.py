"""
Sampled soundness checks of the axiom schemas.
"""
import logging
from typing import Iterable, List, Optional

import numpy as np

from ..conf import DEFAULT_SAMPLES, DEFAULT_SEED, INSTANCE_STATE_BOUND
from ..dsl.printer import print_term
from ..equiv import decide
from ..errors import StateBoundExceeded
from ..statespace import explore_many
from .axioms import AXIOMS, get_axiom
from .generator import TermGenerator, harness_table
from .tally import Tally

logger = logging.getLogger(__name__)

MAX_REDRAWS = 5


def sample_rng(seed: int, index: int, attempt: int = 0) -> np.random.Generator:
    """Generator for one sample; independent of how many samples run before it."""
    return np.random.default_rng([seed, index, attempt])


def check_axiom_soundness(
    axiom_id: str,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    max_states: int = INSTANCE_STATE_BOUND,
) -> Tally:
    """
    Instantiate one schema `samples` times and check its designated relation.

    Instances whose joint state space exceeds max_states are drawn again a
    few times and counted as skipped if they keep exceeding it.

    Raises:
        KeyError: for an unknown axiom id.
    """
    ax = get_axiom(axiom_id)
    table = harness_table()
    tally = Tally(ax.id, ax.relation)
    for index in range(samples):
        for attempt in range(MAX_REDRAWS):
            gen = TermGenerator(sample_rng(seed, index, attempt), ax.options)
            lhs, rhs = ax.instantiate(gen)
            try:
                l = explore_many([lhs, rhs], table, max_states)
            except StateBoundExceeded:
                continue
            verdict = decide(ax.relation, l, *l.roots)
            detail = None
            if not verdict.holds:
                detail = {
                    "sample": index,
                    "lhs": print_term(lhs),
                    "rhs": print_term(rhs),
                    "answer": verdict.answer,
                    "evidence": verdict.evidence,
                }
            tally.record(verdict.holds, detail)
            break
        else:
            tally.skip()
    logger.info(f"{ax.id} ({ax.relation}): {tally.passed}/{tally.samples} passed, {tally.skipped} skipped")
    return tally


def run_axiom_suite(
    ids: Optional[Iterable[str]] = None,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    max_states: int = INSTANCE_STATE_BOUND,
) -> List[Tally]:
    """All registered schemas (or the given ids), in registry order."""
    chosen = list(ids) if ids is not None else list(AXIOMS)
    return [check_axiom_soundness(axiom_id, samples, seed, max_states) for axiom_id in chosen]
