"""
Sampled meta-properties: semantics coincidences, laws of the equivalences,
derived equations and the normalization oracles.

Every property draws its inputs from a per-sample generator and returns None
when it holds or a failure detail when it does not.
"""
import logging
from dataclasses import dataclass, replace
from typing import Callable, Dict, List, Optional, Set, Tuple

from ..canon import canonicalize
from ..conf import DEFAULT_SAMPLES, DEFAULT_SEED, INSTANCE_STATE_BOUND
from ..dsl.printer import print_term
from ..equiv import Verdict, decide, verdict_is_valid
from ..errors import RewriteError, StateBoundExceeded
from ..recursion import check_guarded, flatten_recursion, has_nested_recursion
from ..rewrite import expand_merge, is_basic, is_linear, is_ts_basic, linearize, to_basic_term, to_ts_basic
from ..rewrite.expansion import par_all
from ..sos import Semantics, desugar, idling, shift_term, sigma_derivative, sigma_step
from ..statespace import TwoPhaseLts, disjoint_union, explore, explore_many, remove_labels, rename_labels
from ..terms import (
    Abstr, Act, ActionTable, Alt, CommMerge, DELTA_ACT, Delay, Encap, LeftMerge, Par, Rec, RecSpec,
    Seq, TAU, Term, Terminated, Timeout, Var, substitute, unfold,
)
from .axioms import AXIOMS, get_axiom
from .generator import GenOptions, TermGenerator, harness_table
from .soundness import MAX_REDRAWS, sample_rng
from .tally import Tally

logger = logging.getLogger(__name__)

STAMP_BOUND = 4
PAIR_FACTOR = 5  # pair-based properties draw this many times the sample count

Detail = Optional[Dict[str, object]]


@dataclass
class _Context:
    table: ActionTable
    semantics: Semantics
    max_states: int

    def joint(self, terms: List[Term]) -> TwoPhaseLts:
        return explore_many(terms, self.table, self.max_states)

    def compare(self, relation: str, lhs: Term, rhs: Term) -> Verdict:
        l = self.joint([lhs, rhs])
        return decide(relation, l, *l.roots)


@dataclass(frozen=True)
class MetaProperty:
    id: str
    relation: str
    check: Callable[[TermGenerator, _Context], Detail]
    factor: int = 1


META_PROPERTIES: Dict[str, MetaProperty] = {}


def meta(prop_id: str, relation: str, factor: int = 1):
    def register(fn):
        META_PROPERTIES[prop_id] = MetaProperty(prop_id, relation, fn, factor)
        return fn
    return register


def _term(gen: TermGenerator, largest: int = 5) -> Term:
    return gen.term(1 + int(gen.rng.integers(largest)))


def _instance(gen: TermGenerator, ids: Optional[List[str]] = None) -> Tuple[Term, Term]:
    """lhs and rhs of a random axiom instance, drawn with the schema's own options."""
    ax = get_axiom(gen.pick(ids or [i for i, a in AXIOMS.items() if a.relation in ("strong", "rb-ts")]))
    return ax.instantiate(TermGenerator(gen.rng, ax.options))


def _pair(gen: TermGenerator) -> Tuple[Term, Term]:
    """Half the time a (valid) axiom instance, otherwise two unrelated terms."""
    if gen.rng.random() < 0.5:
        return _instance(gen, [i for i, a in AXIOMS.items() if a.relation != "untimed-rb"])
    return _term(gen), _term(gen)


def _fail(**fields) -> Dict[str, object]:
    return {k: print_term(v) if isinstance(v, Term) else v for k, v in fields.items()}


# --- term-core ----------------------------------------------------------------------

@meta("canonical-idempotent", "syntactic")
def _canonical_idempotent(gen, ctx):
    t = _term(gen, 7)
    once = canonicalize(t)
    if canonicalize(once) != once:
        return _fail(term=t)
    return None


@meta("flatten-recursion", "strong")
def _flatten(gen, ctx):
    c = gen.recursion(3 + int(gen.rng.integers(4)))
    flat = flatten_recursion(c)
    if has_nested_recursion(flat, below_abstraction=False) or not check_guarded(flat.spec):
        return _fail(term=c, flat=flat, reason="nested or unguarded result")
    verdict = ctx.compare("strong", c, flat)
    return None if verdict.holds else _fail(term=c, flat=flat, answer=verdict.answer)


# --- sos-engine ----------------------------------------------------------------------

def _sigma_relation(t: Term) -> Set[Term]:
    """σ-rules read as a relation: every successor some rule instance derives."""
    if isinstance(t, Delay):
        return {t.body}
    if isinstance(t, (Act, Terminated, Timeout)):
        return set()
    if isinstance(t, Alt):
        left, right = _sigma_relation(t.left), _sigma_relation(t.right)
        out = {Alt(x, y) for x in left for y in right}
        if not right:
            out |= left
        if not left:
            out |= right
        return out
    if isinstance(t, Seq):
        return {Seq(x, t.right) for x in _sigma_relation(t.left)}
    if isinstance(t, (Par, LeftMerge, CommMerge)):
        return {type(t)(x, y) for x in _sigma_relation(t.left) for y in _sigma_relation(t.right)}
    if isinstance(t, (Encap, Abstr)):
        return {type(t)(t.actions, x) for x in _sigma_relation(t.body)}
    if isinstance(t, Rec):
        return _sigma_relation(unfold(t))
    raise ValueError(f"no sigma rule for {type(t).__name__}")


@meta("sigma-determinism", "syntactic")
def _sigma_determinism(gen, ctx):
    l = explore(_term(gen), ctx.table, ctx.max_states)
    for s, state in enumerate(l.states):
        if l.is_tick(s):
            continue
        expected = sigma_step(state)
        derived = _sigma_relation(state)
        if len(derived) > 1 or derived != (set() if expected is None else {expected}):
            return _fail(state=state, successors=len(derived))
    return None


@meta("shift-sigma-coherence", "strong")
def _shift_sigma(gen, ctx):
    t = canonicalize(desugar(_term(gen)))
    nxt = sigma_step(t)
    verdict = ctx.compare("strong", shift_term(t), DELTA_ACT if nxt is None else nxt)
    return None if verdict.holds else _fail(term=t, answer=verdict.answer)


def _stamped_oracle(sem: Semantics, t: Term, bound: int) -> Set[Tuple[str, int, Term]]:
    """Stamped steps by walking σ-derivatives explicitly from t for every stamp."""
    steps = set()
    for n in range(bound + 1):
        current = t if n == 0 else sigma_derivative(t, n)
        if current is None:
            break
        steps |= {(a, n, x) for a, x in sem.action_steps(current)}
    return steps


@meta("stamp-correspondence", "syntactic")
def _stamp_correspondence(gen, ctx):
    t = canonicalize(desugar(_term(gen)))
    view = ctx.semantics.stamped_steps(t, STAMP_BOUND)
    stamped = {(s.label, s.stamp, s.target) for s in view.steps}
    if stamped != _stamped_oracle(ctx.semantics, t, STAMP_BOUND):
        return _fail(term=t, reason="stamped steps differ from the σ-derivative walk")
    now = {s.label for s in view.steps if s.stamp == 0}
    if now != {a for a, _ in ctx.semantics.action_steps(t)}:
        return _fail(term=t, reason="stamp 0 differs from the action steps")
    if any(not idling(t, s.stamp) for s in view.steps):
        return _fail(term=t, reason="step stamped beyond the idling bound")
    if view.truncated != idling(t, STAMP_BOUND + 1):
        return _fail(term=t, reason="truncation flag disagrees with idling")
    return None


# --- state-space ---------------------------------------------------------------------

def _against_explored(ctx: _Context, transformed: TwoPhaseLts, t: Term) -> Verdict:
    l = disjoint_union(transformed, explore(t, ctx.table, ctx.max_states))
    return decide("strong", l, *l.roots)


@meta("abstraction-commutes", "strong")
def _abstraction_commutes(gen, ctx):
    t, hidden = _term(gen), gen.action_set()
    renamed = rename_labels(explore(t, ctx.table, ctx.max_states), hidden, TAU)
    verdict = _against_explored(ctx, renamed, Abstr(hidden, t))
    return None if verdict.holds else _fail(term=t, hidden=sorted(hidden), answer=verdict.answer)


@meta("encapsulation-commutes", "strong")
def _encapsulation_commutes(gen, ctx):
    t, blocked = _term(gen), gen.action_set()
    # edges go first, unreachable states stay in the copy
    removed = remove_labels(explore(t, ctx.table, ctx.max_states), blocked)
    verdict = _against_explored(ctx, removed, Encap(blocked, t))
    return None if verdict.holds else _fail(term=t, blocked=sorted(blocked), answer=verdict.answer)


# --- equiv ---------------------------------------------------------------------------

_SILENT_FREE = GenOptions(silent=False, abstraction=False)


@meta("b-strong-coincidence", "b/strong", factor=PAIR_FACTOR)
def _b_strong_coincidence(gen, ctx):
    """On graphs without τ and σ edges branching and strong bisimilarity agree."""
    sub = TermGenerator(gen.rng, _SILENT_FREE)
    x, y = _term(sub, 4), _term(sub, 4)
    rhs = sub.pick([x, Alt(x, x), Alt(x, y), y])
    l = ctx.joint([x, rhs])
    if any(label == TAU for e in l.edges for label, _ in e):
        return None
    untimed = replace(l, sigma_next=[None] * len(l))
    b = decide("b", untimed, *untimed.roots)
    strong = decide("strong", untimed, *untimed.roots)
    if b.answer != strong.answer:
        return _fail(lhs=x, rhs=rhs, b=b.answer, strong=strong.answer)
    return None

@meta("tp-ts-coincidence", "rb/rb-ts", factor=PAIR_FACTOR)
def _coincidence(gen, ctx):
    lhs, rhs = _pair(gen)
    l = ctx.joint([lhs, rhs])
    tp = decide("rb", l, *l.roots)
    ts = decide("rb-ts", l, *l.roots)
    if tp.answer in ("yes", "no") and tp.answer != ts.answer:
        return _fail(lhs=lhs, rhs=rhs, rb=tp.answer, rb_ts=ts.answer)
    return None


@meta("inclusion", "rb-ts/da-rb", factor=PAIR_FACTOR)
def _inclusion(gen, ctx):
    lhs, rhs = _pair(gen)
    l = ctx.joint([lhs, rhs])
    if decide("rb-ts", l, *l.roots).holds and not decide("da-rb", l, *l.roots).holds:
        return _fail(lhs=lhs, rhs=rhs)
    return None


@meta("equivalence-laws", "rb-ts/da-rb")
def _equivalence_laws(gen, ctx):
    relation = gen.pick(["rb-ts", "da-rb"])
    x, y = _pair(gen)
    z = Alt(y, y)
    l = ctx.joint([x, y, z])
    rx, ry, rz = l.roots
    if not decide(relation, l, rx, rx).holds:
        return _fail(relation=relation, term=x, law="reflexivity")
    if decide(relation, l, rx, ry).answer != decide(relation, l, ry, rx).answer:
        return _fail(relation=relation, lhs=x, rhs=y, law="symmetry")
    if decide(relation, l, rx, ry).holds and decide(relation, l, ry, rz).holds and not decide(relation, l, rx, rz).holds:
        return _fail(relation=relation, lhs=x, rhs=y, law="transitivity")
    return None


def _context(gen: TermGenerator, bpa: bool) -> Callable[[Term], Term]:
    z = _term(gen, 3)
    kinds = ["alt", "seq_left", "seq_right", "delay"]
    if not bpa:
        kinds += ["par", "left_merge", "encap", "abstr", "timeout"]
    kind = gen.pick(kinds)
    hidden = gen.action_set()
    return {
        "alt": lambda t: Alt(t, z),
        "seq_left": lambda t: Seq(t, z),
        "seq_right": lambda t: Seq(z, t),
        "delay": Delay,
        "par": lambda t: Par(t, z),
        "left_merge": lambda t: LeftMerge(z, t),
        "encap": lambda t: Encap(hidden, t),
        "abstr": lambda t: Abstr(hidden, t),
        "timeout": Timeout,
    }[kind]


@meta("congruence", "rb-ts/da-rb")
def _congruence(gen, ctx):
    if gen.rng.random() < 0.5:
        relation, ids, bpa = "rb-ts", ["DRB1", "DRB2", "DRB3", "DRB4"], False
    else:
        relation, ids, bpa = "da-rb", ["DRB5"], True
    lhs, rhs = _instance(gen, ids)
    wrap = _context(gen, bpa)
    verdict = ctx.compare(relation, wrap(lhs), wrap(rhs))
    return None if verdict.holds else _fail(relation=relation, lhs=wrap(lhs), rhs=wrap(rhs))


@meta("witness-recheck", "all")
def _witness_recheck(gen, ctx):
    relation = gen.pick(["strong", "b", "rb-ts", "da-rb", "untimed-rb"])
    lhs, rhs = _pair(gen)
    l = ctx.joint([lhs, rhs])
    verdict = decide(relation, l, *l.roots)
    if verdict.holds and not verdict_is_valid(verdict, l, *l.roots):
        return _fail(relation=relation, lhs=lhs, rhs=rhs)
    return None


# --- derived equations ----------------------------------------------------------------

def _standard_concurrency(x: Term, y: Term, z: Term) -> List[Tuple[str, Term, Term]]:
    return [
        ("merge-commutative", Par(x, y), Par(y, x)),
        ("merge-associative", Par(Par(x, y), z), Par(x, Par(y, z))),
        ("left-merge-nesting", LeftMerge(LeftMerge(x, y), z), LeftMerge(x, Par(y, z))),
        ("comm-commutative", CommMerge(x, y), CommMerge(y, x)),
        ("comm-associative", CommMerge(CommMerge(x, y), z), CommMerge(x, CommMerge(y, z))),
        ("comm-left-merge", CommMerge(x, LeftMerge(y, z)), LeftMerge(CommMerge(x, y), z)),
    ]


@meta("standard-concurrency", "rb-ts")
def _standard(gen, ctx):
    x, y, z = (_term(gen, 3) for _ in range(3))
    name, lhs, rhs = gen.pick(_standard_concurrency(x, y, z))
    verdict = ctx.compare("rb-ts", lhs, rhs)
    return None if verdict.holds else _fail(equation=name, lhs=lhs, rhs=rhs)


@meta("handshaking", "rb-ts")
def _handshaking(gen, ctx):
    x, y, z = (_term(gen, 3) for _ in range(3))
    lhs = Timeout(CommMerge(CommMerge(x, y), z))
    verdict = ctx.compare("rb-ts", lhs, DELTA_ACT)
    return None if verdict.holds else _fail(lhs=lhs)


@meta("expansion", "rb-ts")
def _expansion(gen, ctx):
    xs = [_term(gen, 2) for _ in range(3 + int(gen.rng.integers(2)))]
    lhs = par_all(xs)
    rhs = expand_merge(lhs, ctx.table)
    verdict = ctx.compare("rb-ts", lhs, rhs)
    return None if verdict.holds else _fail(lhs=lhs, components=len(xs))


@meta("rdp", "strong")
def _rdp(gen, ctx):
    lhs, rhs = get_axiom("RDP").instantiate(gen)
    verdict = ctx.compare("strong", lhs, rhs)
    return None if verdict.holds else _fail(lhs=lhs, rhs=rhs)


def _doubled(spec: RecSpec) -> RecSpec:
    """
    Every variable V split into V_0 and V_1; occurrences in the equations of
    copy i refer to copy 1 - i. Its V_0 components solve the original spec.
    """
    eqs = {}
    for i in (0, 1):
        renaming = {v: Var(f"{v}_{1 - i}") for v in spec.variables}
        for v, body in spec.equations:
            eqs[f"{v}_{i}"] = substitute(body, renaming)
    return RecSpec.from_dict(eqs)


@meta("rsp", "rb-ts")
def _rsp(gen, ctx):
    spec = gen.spec(1 + int(gen.rng.integers(3)))
    doubled = _doubled(spec)
    for v in sorted(spec.variables):
        verdict = ctx.compare("rb-ts", Rec(f"{v}_0", doubled), Rec(v, spec))
        if not verdict.holds:
            return _fail(variable=v, constant=Rec(v, spec))
    return None


# --- normalization --------------------------------------------------------------------

_RECURSION_FREE = GenOptions.recursion_free()


@meta("basic-terms", "strong")
def _basic_terms(gen, ctx):
    t = TermGenerator(gen.rng, _RECURSION_FREE).term(1 + int(gen.rng.integers(7)))
    b = to_basic_term(t, ctx.table)
    if not is_basic(b):
        return _fail(term=t, basic=b, reason="not accepted by the recognizer")
    verdict = ctx.compare("strong", t, b)
    return None if verdict.holds else _fail(term=t, basic=b)


@meta("ts-basic-terms", "strong")
def _ts_basic_terms(gen, ctx):
    t = TermGenerator(gen.rng, _RECURSION_FREE).term(1 + int(gen.rng.integers(7)))
    b = to_ts_basic(t, ctx.table)
    if not is_ts_basic(b):
        return _fail(term=t, ts_basic=b, reason="not accepted by the recognizer")
    verdict = ctx.compare("strong", t, b)
    return None if verdict.holds else _fail(term=t, ts_basic=b)


@meta("linearization", "strong")
def _linearization(gen, ctx):
    t = TermGenerator(gen.rng, GenOptions.regular()).term(1 + int(gen.rng.integers(7)))
    try:
        spec, root = linearize(t, ctx.table, ctx.max_states)
    except RewriteError as exc:
        if isinstance(exc.__cause__, StateBoundExceeded):
            raise exc.__cause__
        raise
    if not is_linear(spec):
        return _fail(term=t, reason="not linear")
    verdict = ctx.compare("strong", t, Rec(root, spec))
    return None if verdict.holds else _fail(term=t)


def check_meta_property(
    prop_id: str,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    max_states: int = INSTANCE_STATE_BOUND,
) -> Tally:
    """
    Raises:
        KeyError: for an unknown property id.
    """
    if prop_id not in META_PROPERTIES:
        raise KeyError(f"unknown property {prop_id!r}; available: {', '.join(META_PROPERTIES)}")
    prop = META_PROPERTIES[prop_id]
    table = harness_table()
    ctx = _Context(table, Semantics(table), max_states)
    tally = Tally(prop.id, prop.relation)
    for index in range(samples * prop.factor):
        for attempt in range(MAX_REDRAWS):
            gen = TermGenerator(sample_rng(seed, index, attempt), GenOptions())
            try:
                detail = prop.check(gen, ctx)
            except StateBoundExceeded:
                continue
            tally.record(detail is None, None if detail is None else {"sample": index, **detail})
            break
        else:
            tally.skip()
    logger.info(f"{prop.id}: {tally.passed}/{tally.samples} passed, {tally.skipped} skipped")
    return tally


def check_meta_properties(
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    ids: Optional[List[str]] = None,
    max_states: int = INSTANCE_STATE_BOUND,
) -> List[Tally]:
    """Every registered meta-property (or the given ids), in registry order."""
    return [check_meta_property(p, samples, seed, max_states) for p in (ids or list(META_PROPERTIES))]
