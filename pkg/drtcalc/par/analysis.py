"""
Correctness and timing analysis of the PAR protocol.

All equivalence checks explore the compared terms jointly so the roots share
one state numbering.
"""
import logging
from collections import deque
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Set, Tuple

from ..conf import DEFAULT_HORIZON, DEFAULT_MAX_STATES
from ..equiv import Verdict, decide
from ..statespace import TwoPhaseLts, deadlock_states, explore, explore_many
from ..terms import TAU, Rec, Term
from .params import ParParams, data_action
from .protocol import hidden_system_term, par_action_table, system_term
from .reference import buffer_spec, reference_specs

logger = logging.getLogger(__name__)


def _joint(terms: List[Term], p: ParParams, max_states: int) -> TwoPhaseLts:
    return explore_many(terms, par_action_table(p), max_states)


def check_functional_correctness(p: ParParams, max_states: int = DEFAULT_MAX_STATES) -> Verdict:
    """
    The hidden system against the one-place buffer, rooted branching after
    abstracting from time. On a negative answer, reachable deadlocks of the
    encapsulated system are attached as evidence.
    """
    buffer = Rec("B", buffer_spec(p))
    l = _joint([hidden_system_term(p), buffer], p, max_states)
    verdict = decide("untimed-rb", l, *l.roots)
    if not verdict.holds:
        stuck = deadlock_states(l, l.roots[0])
        verdict.evidence["deadlocks"] = [{"state": s, "trace": trace} for s, trace in stuck[:5]]
    logger.info(f"functional correctness (t_s'={p.t_s_prime}): {verdict.answer}")
    return verdict


@dataclass
class PerformanceVerdicts:
    """The four comparisons that place the timed reference specifications."""
    system_vs_performance: Verdict  # rb-ts, expected yes
    system_vs_dormant: Verdict  # da-rb, expected yes
    performance_vs_dormant_ts: Verdict  # rb-ts, expected no
    performance_vs_dormant_da: Verdict  # da-rb, expected yes

    def answers(self) -> Tuple[str, str, str, str]:
        return (
            self.system_vs_performance.answer,
            self.system_vs_dormant.answer,
            self.performance_vs_dormant_ts.answer,
            self.performance_vs_dormant_da.answer,
        )

    @property
    def as_expected(self) -> bool:
        return self.answers() == ("yes", "yes", "no", "yes")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "system_vs_performance": self.system_vs_performance.to_dict(),
            "system_vs_dormant": self.system_vs_dormant.to_dict(),
            "performance_vs_dormant_ts": self.performance_vs_dormant_ts.to_dict(),
            "performance_vs_dormant_da": self.performance_vs_dormant_da.to_dict(),
            "as_expected": self.as_expected,
        }


def check_performance_spec(p: ParParams, max_states: int = DEFAULT_MAX_STATES) -> PerformanceVerdicts:
    """
    Compare the hidden system with the performance and dormancy-reduced
    specifications.

    Raises:
        ParError: on a premature time-out.
    """
    refs = reference_specs(p)
    l = _joint([hidden_system_term(p), refs.proc("Performance"), refs.proc("Dormant")], p, max_states)
    system, perf, dormant = l.roots
    result = PerformanceVerdicts(
        system_vs_performance=decide("rb-ts", l, system, perf),
        system_vs_dormant=decide("da-rb", l, system, dormant),
        performance_vs_dormant_ts=decide("rb-ts", l, perf, dormant),
        performance_vs_dormant_da=decide("da-rb", l, perf, dormant),
    )
    logger.info(f"performance comparisons: {result.answers()}")
    return result


def check_spec_match(p: ParParams, max_states: int = DEFAULT_MAX_STATES) -> Dict[str, Verdict]:
    """
    Fidelity of the reference specifications themselves:

    - expansion: the hidden system against the hidden expanded specification (rb-ts)
    - iteration: the recursive dormancy-reduced form against its σ-iteration form (rb-ts)
    - untimed: the hidden untimed specification against the buffer (untimed-rb)
    """
    refs = reference_specs(p)
    results = {}
    l = _joint([hidden_system_term(p), refs.proc("HiddenExpanded")], p, max_states)
    results["expansion"] = decide("rb-ts", l, *l.roots)
    l = _joint([refs.proc("Dormant"), refs.proc("DormantIterated")], p, max_states)
    results["iteration"] = decide("rb-ts", l, *l.roots)
    l = _joint([refs.proc("HiddenUntimed"), refs.proc("Buffer")], p, max_states)
    results["untimed"] = decide("untimed-rb", l, *l.roots)
    logger.info("spec match: " + ", ".join(f"{k}={v.answer}" for k, v in results.items()))
    return results


def _elapsed_until(
    l: TwoPhaseLts,
    sources: Iterable[Tuple[int, Set[str]]],
    horizon: int,
) -> Set[int]:
    """
    σ-counts from each source to the first state enabling one of its goal
    labels, moving only along τ and σ edges and never past the horizon.
    """
    found: Set[int] = set()
    for source, goals in sources:
        seen = {(source, 0)}
        queue = deque([(source, 0)])
        while queue:
            s, elapsed = queue.popleft()
            if any(a in goals for a, _ in l.edges[s]):
                found.add(elapsed)
                continue
            nexts = [(t, elapsed) for a, t in l.edges[s] if a == TAU]
            if l.sigma_next[s] is not None and elapsed < horizon:
                nexts.append((l.sigma_next[s], elapsed + 1))
            for node in nexts:
                if node not in seen:
                    seen.add(node)
                    queue.append(node)
    return found


def _labelled_targets(l: TwoPhaseLts, labels: Dict[str, Set[str]]) -> List[Tuple[int, Set[str]]]:
    return sorted(
        {(t, frozenset(labels[a])) for edges in l.edges for a, t in edges if a in labels},
        key=lambda x: (x[0], sorted(x[1])),
    )


def delivery_delays(
    p: ParParams,
    horizon: int = DEFAULT_HORIZON,
    max_states: int = DEFAULT_MAX_STATES,
) -> Set[int]:
    """Achievable numbers of time slices between reading a datum and delivering it."""
    l = explore(hidden_system_term(p), par_action_table(p), max_states)
    goals = {data_action("r", 1, d): {data_action("s", 2, d)} for d in p.data}
    return _elapsed_until(l, _labelled_targets(l, goals), horizon)


def post_delivery_gaps(
    p: ParParams,
    horizon: int = DEFAULT_HORIZON,
    max_states: int = DEFAULT_MAX_STATES,
) -> Set[int]:
    """Achievable numbers of time slices between a delivery and the next read becoming possible."""
    l = explore(hidden_system_term(p), par_action_table(p), max_states)
    reads = {data_action("r", 1, d) for d in p.data}
    goals = {data_action("s", 2, d): reads for d in p.data}
    return _elapsed_until(l, _labelled_targets(l, goals), horizon)


def first_delivery_time(p: ParParams, max_states: int = DEFAULT_MAX_STATES) -> Optional[int]:
    """Fewest time slices from a read to its delivery; None if nothing is ever delivered."""
    delays = delivery_delays(p, horizon=p.t_s + p.t_k + p.t_r, max_states=max_states)
    return min(delays) if delays else None


def expected_delivery_delays(p: ParParams, horizon: int = DEFAULT_HORIZON) -> Set[int]:
    """t_S + t_K + t_R + i·t_S' within the horizon."""
    base = p.t_s + p.t_k + p.t_r
    return set(range(base, horizon + 1, p.t_s_prime))


def expected_post_delivery_gaps(p: ParParams, horizon: int = DEFAULT_HORIZON) -> Set[int]:
    """t_R' + t_L, then t_S' - t_R + t_R' + t_L + i·t_S' within the horizon."""
    direct = p.t_r_prime + p.t_l
    retried = p.t_s_prime - p.t_r + p.t_r_prime + p.t_l
    return {g for g in [direct] + list(range(retried, horizon + 1, p.t_s_prime)) if g <= horizon}


def timing_report(p: ParParams, horizon: int = DEFAULT_HORIZON, max_states: int = DEFAULT_MAX_STATES) -> Dict[str, Any]:
    """Observed timing sets next to their closed forms."""
    p.require_cycle_ok("timing analysis")
    delays = delivery_delays(p, horizon, max_states)
    gaps = post_delivery_gaps(p, horizon, max_states)
    return {
        "horizon": horizon,
        "first_delivery": min(delays) if delays else None,
        "delivery_delays": sorted(delays),
        "expected_delivery_delays": sorted(expected_delivery_delays(p, horizon)),
        "post_delivery_gaps": sorted(gaps),
        "expected_post_delivery_gaps": sorted(expected_post_delivery_gaps(p, horizon)),
    }


def deadlock_report(p: ParParams, max_states: int = DEFAULT_MAX_STATES) -> List[Dict[str, Any]]:
    """Reachable deadlocks of the encapsulated (unhidden) system with shortest traces."""
    l = explore(system_term(p), par_action_table(p), max_states)
    return [{"state": s, "trace": trace} for s, trace in deadlock_states(l)]
