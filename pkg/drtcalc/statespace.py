"""
Explicit state spaces of the two-phase semantics.

States are canonical terms (plus √). Exploration is a breadth-first closure
under action steps and the σ-successor; successors are visited in a fixed
order so state numbering and dumps are stable across runs.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from .canon import canonicalize
from .conf import DEFAULT_MAX_STATES
from .errors import StateBoundExceeded
from .sos import Semantics, desugar, sigma_step
from .terms import TICK, ActionTable, Term, sort_key

logger = logging.getLogger(__name__)

SIGMA = "SIGMA"


@dataclass
class TwoPhaseLts:
    """
    Finite two-phase transition system.

    Attributes:
        states: Canonical terms indexed by state id (√ is TICK).
        edges: Per state, sorted (label, target id) action edges.
        sigma_next: Per state, the σ-successor id or None.
        roots: Root ids, one per explored term (explore gives exactly one).
        table: Action table the semantics was computed with.
    """
    states: List[Term]
    edges: List[List[Tuple[str, int]]]
    sigma_next: List[Optional[int]]
    roots: List[int]
    table: ActionTable
    index: Dict[Term, int] = field(default_factory=dict, repr=False)

    @property
    def root(self) -> int:
        return self.roots[0]

    def __len__(self) -> int:
        return len(self.states)

    @property
    def num_edges(self) -> int:
        return sum(len(e) for e in self.edges)

    @property
    def num_sigma(self) -> int:
        return sum(1 for s in self.sigma_next if s is not None)

    def is_tick(self, s: int) -> bool:
        return self.states[s] is TICK

    def state_of(self, t: Term) -> int:
        return self.index[canonicalize(desugar(t))]


@dataclass
class UntimedLts:
    """Transition system without time: same state ids, σ erased."""
    states: List[Term]
    edges: List[List[Tuple[str, int]]]
    roots: List[int]

    @property
    def root(self) -> int:
        return self.roots[0]

    def __len__(self) -> int:
        return len(self.states)

    def is_tick(self, s: int) -> bool:
        return self.states[s] is TICK


def explore_many(
    terms: Sequence[Term],
    table: ActionTable,
    max_states: int = DEFAULT_MAX_STATES,
    semantics: Optional[Semantics] = None,
) -> TwoPhaseLts:
    """
    Joint state space of several closed terms.

    Args:
        terms: Closed, guarded terms; Shift, TimeFree and TimeIter are desugared.
        table: Action table for communication.
        max_states: Bound on the number of states.
        semantics: Optional shared Semantics (memo tables are reused).

    Returns:
        TwoPhaseLts with one root per input term.

    Raises:
        StateBoundExceeded: when more than max_states states are reached.
    """
    sem = semantics or Semantics(table)
    states: List[Term] = []
    index: Dict[Term, int] = {}
    queue: deque = deque()

    def intern(t: Term) -> int:
        c = t if t is TICK else canonicalize(t)
        sid = index.get(c)
        if sid is None:
            sid = len(states)
            if sid >= max_states:
                raise StateBoundExceeded(max_states)
            index[c] = sid
            states.append(c)
            queue.append(sid)
        return sid

    roots = [intern(desugar(t)) for t in terms]
    edges: Dict[int, List[Tuple[str, int]]] = {}
    sigma: Dict[int, Optional[int]] = {}
    while queue:
        sid = queue.popleft()
        t = states[sid]
        if t is TICK:
            edges[sid], sigma[sid] = [], None
            continue
        steps = sorted(sem.action_steps(t), key=lambda s: (s.label, sort_key(s.target)))
        out = []
        for label, target in steps:
            out.append((label, intern(target)))
        edges[sid] = sorted(set(out))
        nxt = sigma_step(t)
        sigma[sid] = None if nxt is None else intern(nxt)
    lts = TwoPhaseLts(
        states=states,
        edges=[edges[i] for i in range(len(states))],
        sigma_next=[sigma[i] for i in range(len(states))],
        roots=roots,
        table=table,
        index=index,
    )
    logger.debug(f"explored {len(lts)} states, {lts.num_edges} edges, {lts.num_sigma} sigma edges")
    return lts


def explore(t: Term, table: ActionTable, max_states: int = DEFAULT_MAX_STATES) -> TwoPhaseLts:
    """State space of a single closed term."""
    return explore_many([t], table, max_states)


def sigma_lasso(l: TwoPhaseLts, s: int) -> Tuple[List[int], int]:
    """
    Maximal σ-chain from s.

    Returns:
        (path, cycle_len): path lists distinct states s, σ(s), σ²(s), ...;
        cycle_len is 0 when the chain ends, else the period of the cycle the
        last state closes into.
    """
    path: List[int] = []
    position: Dict[int, int] = {}
    current: Optional[int] = s
    while current is not None and current not in position:
        position[current] = len(path)
        path.append(current)
        current = l.sigma_next[current]
    if current is None:
        return path, 0
    return path, len(path) - position[current]


def time_free_project(l: TwoPhaseLts) -> UntimedLts:
    """
    Time-free projection: each state gets the action edges of its whole σ-chain.

    Time steps vanish and every action becomes delayable, which is what the
    projection axioms state term by term.
    """
    edges: List[List[Tuple[str, int]]] = []
    for s in range(len(l)):
        path, _ = sigma_lasso(l, s)
        saturated = set()
        for p in path:
            saturated.update(l.edges[p])
        edges.append(sorted(saturated))
    return UntimedLts(states=list(l.states), edges=edges, roots=list(l.roots))


def untimed_view(l: TwoPhaseLts) -> UntimedLts:
    """The action edges of l with σ dropped (no saturation)."""
    return UntimedLts(states=list(l.states), edges=[list(e) for e in l.edges], roots=list(l.roots))


def state_text(t: Term) -> str:
    return "TICK" if t is TICK else str(t)


def dump(l: TwoPhaseLts) -> str:
    """Line-oriented text dump: header, one line per state, then the edges."""
    lines = [f"lts {len(l)} {l.num_edges} {l.num_sigma} root={l.root}"]
    for sid, t in enumerate(l.states):
        lines.append(f"s{sid}: {state_text(t)}")
    for sid in range(len(l)):
        for label, target in l.edges[sid]:
            lines.append(f"s{sid} -{label}-> s{target}")
        nxt = l.sigma_next[sid]
        if nxt is not None:
            lines.append(f"s{sid} -{SIGMA}-> s{nxt}")
    return "\n".join(lines) + "\n"


def to_networkx(l: TwoPhaseLts) -> nx.MultiDiGraph:
    """MultiDiGraph view; σ edges carry the label SIGMA."""
    g = nx.MultiDiGraph()
    for sid, t in enumerate(l.states):
        g.add_node(sid, term=state_text(t), tick=t is TICK)
    for sid in range(len(l)):
        for label, target in l.edges[sid]:
            g.add_edge(sid, target, label=label)
        nxt = l.sigma_next[sid]
        if nxt is not None:
            g.add_edge(sid, nxt, label=SIGMA)
    return g


def deadlock_states(l: TwoPhaseLts, root: Optional[int] = None) -> List[Tuple[int, List[str]]]:
    """
    Non-terminated states without any action edge or σ-successor, each with a
    shortest label trace from the root.
    """
    g = to_networkx(l)
    start = l.root if root is None else root
    stuck = [n for n, d in g.out_degree() if d == 0 and not g.nodes[n]["tick"]]
    reachable = nx.descendants(g, start) | {start}
    result = []
    for s in sorted(n for n in stuck if n in reachable):
        path = nx.shortest_path(g, start, s)
        trace = [min(d["label"] for d in g.get_edge_data(u, v).values()) for u, v in zip(path, path[1:])]
        result.append((s, trace))
    return result


def rename_labels(l: TwoPhaseLts, hidden: Iterable[str], new_label: str) -> TwoPhaseLts:
    """Copy of l with labels in hidden renamed (the effect of abstraction on edges)."""
    hidden = frozenset(hidden)
    edges = [sorted({(new_label if a in hidden else a, t) for a, t in e}) for e in l.edges]
    return TwoPhaseLts(list(l.states), edges, list(l.sigma_next), list(l.roots), l.table, dict(l.index))


def remove_labels(l: TwoPhaseLts, blocked: Iterable[str]) -> TwoPhaseLts:
    """Copy of l with edges labelled in blocked deleted (the effect of encapsulation)."""
    blocked = frozenset(blocked)
    edges = [[(a, t) for a, t in e if a not in blocked] for e in l.edges]
    return TwoPhaseLts(list(l.states), edges, list(l.sigma_next), list(l.roots), l.table, dict(l.index))


def disjoint_union(first: TwoPhaseLts, second: TwoPhaseLts) -> TwoPhaseLts:
    """
    Both graphs side by side, second's ids shifted past first's; roots of both
    are kept in order. Used to compare a transformed graph against a freshly
    explored one. state_of resolves into first where a term occurs in both.
    """
    offset = len(first)
    edges = [list(e) for e in first.edges] + [[(a, t + offset) for a, t in e] for e in second.edges]
    sigma = list(first.sigma_next) + [None if s is None else s + offset for s in second.sigma_next]
    index = {t: s + offset for t, s in second.index.items()}
    index.update(first.index)
    return TwoPhaseLts(
        list(first.states) + list(second.states),
        edges,
        sigma,
        list(first.roots) + [r + offset for r in second.roots],
        first.table,
        index,
    )
