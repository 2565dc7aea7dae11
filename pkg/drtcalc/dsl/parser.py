"""
Model files: lark parse tree -> raw declarations -> resolved Model.

Bare names are resolved after the whole file is read, in this order: variable
bound by an enclosing specification, proc, declared action (as the delayable
action). Named specifications are referenced as `<X | Name>`.
"""
import logging
from pathlib import Path
from typing import Dict, FrozenSet, List, Optional, Set, Tuple, Union

from lark import Token, Transformer
from lark.exceptions import UnexpectedInput, VisitError

from ..errors import DrtError, ModelError, TermError
from ..recursion import check_guarded
from ..terms import (
    Abstr, Act, ActionTable, Alt, CommMerge, DELTA, DELTA_ACT, Delay, Encap, LeftMerge, Par,
    Rec, RecSpec, Seq, Shift, TAU, TAU_ACT, Term, TimeFree, TimeIter, Timeout, Var, _node,
    delayable, rebuild, sigma_n,
)
from .grammar import get_parser
from .model import CheckDirective, Model

logger = logging.getLogger(__name__)

RELATION_NAMES = ("strong", "b", "rb", "rb-ts", "da-rb", "untimed-rb")

Position = Tuple[int, int]


@_node
class SpecRef(Term):
    """Placeholder for `<X | Name>` until named specs are known."""
    var: str
    spec_name: str


@_node
class _Inline(Term):
    """Placeholder for an inline `<X | ...>` whose bodies are not resolved yet."""
    var: str
    equations: Tuple[Tuple[str, Term], ...]


def _pos(tok: Token) -> Position:
    return (tok.line, tok.column)


class _ToRaw(Transformer):
    """Parse tree to unresolved terms; remembers where each name first occurs."""

    def __init__(self):
        super().__init__()
        self.positions: Dict[str, Position] = {}

    def _name(self, tok: Token) -> str:
        self.positions.setdefault(str(tok), _pos(tok))
        return str(tok)

    # declarations
    def start(self, items):
        return items

    def actions_decl(self, toks):
        return ("actions", [self._name(t) for t in toks], _pos(toks[0]))

    def comm_entry(self, toks):
        a, b, c = (self._name(t) for t in toks)
        return (a, b, c, _pos(toks[0]))

    def comm_decl(self, entries):
        return ("comm", entries, entries[0][3])

    def handshaking_decl(self, _):
        return ("handshaking", None, None)

    def proc_decl(self, items):
        tok, t = items
        return ("proc", (str(tok), t), _pos(tok))

    def equation(self, items):
        tok, t = items
        return (str(tok), t, _pos(tok))

    def spec_decl(self, items):
        tok, *eqs = items
        return ("spec", (str(tok), eqs), _pos(tok))

    def relation(self, toks):
        return ("-".join(str(t) for t in toks), _pos(toks[0]))

    def verdict(self, toks):
        return str(toks[0])

    def expect(self, items):
        return items[0]

    def check_decl(self, items):
        (relation, pos), lhs, rhs, *rest = items
        return ("check", (relation, lhs, rhs, rest[0] if rest else None), pos)

    # terms
    def undelayable(self, toks):
        return Act(self._name(toks[0]))

    def tau(self, _):
        return TAU_ACT

    def delta(self, _):
        return DELTA_ACT

    def name(self, toks):
        return Var(self._name(toks[0]))

    def delay(self, items):
        return Delay(items[0])

    def delay_n(self, items):
        return sigma_n(items[1], int(items[0]))

    def time_iter(self, items):
        return TimeIter(int(items[0]), items[1])

    def action_set(self, toks):
        return frozenset(self._name(t) for t in toks)

    def encap(self, items):
        return Encap(items[0], items[1])

    def hide(self, items):
        return Abstr(items[0], items[1])

    def timeout(self, items):
        return Timeout(items[0])

    def time_free(self, items):
        return TimeFree(items[0])

    def shift(self, items):
        return Shift(items[0])

    def rec(self, items):
        tok, *eqs = items
        names = [v for v, _, _ in eqs]
        if str(tok) not in names:
            raise ModelError(f"{tok} is not a variable of its specification", *_pos(tok))
        _check_unique(eqs)
        return _Inline(str(tok), tuple((v, t) for v, t, _ in eqs))

    def spec_ref(self, toks):
        self._name(toks[1])
        return SpecRef(str(toks[0]), str(toks[1]))

    def alt(self, items):
        return Alt(items[0], items[1])

    def par(self, items):
        return Par(items[0], items[1])

    def left_merge(self, items):
        return LeftMerge(items[0], items[1])

    def comm_merge(self, items):
        return CommMerge(items[0], items[1])

    def seq(self, items):
        return Seq(items[0], items[1])


def _check_unique(eqs) -> None:
    seen: Set[str] = set()
    for v, _, pos in eqs:
        if v in seen:
            raise ModelError(f"variable {v} defined twice", *pos)
        seen.add(v)


class _Resolver:
    """Second pass: names to terms, guardedness, action validity."""

    def __init__(self, table: ActionTable, positions: Dict[str, Position], raw_procs, raw_specs):
        self.table = table
        self.positions = positions
        self.raw_procs: Dict[str, Tuple[Term, Position]] = raw_procs
        self.raw_specs: Dict[str, Tuple[list, Position]] = raw_specs
        self.procs: Dict[str, Term] = {}
        self.specs: Dict[str, RecSpec] = {}
        self._resolving: List[str] = []

    def error(self, message: str, name: Optional[str] = None, pos: Optional[Position] = None) -> ModelError:
        pos = pos or self.positions.get(name or "", (None, None))
        return ModelError(message, *pos)

    def spec(self, name: str) -> RecSpec:
        if name in self.specs:
            return self.specs[name]
        if name not in self.raw_specs:
            raise self.error(f"unknown spec {name}", name)
        if name in self._resolving:
            raise self.error(f"spec {name} refers to itself through <X | {name}>", name)
        eqs, pos = self.raw_specs[name]
        self._resolving.append(name)
        bound = frozenset(v for v, _, _ in eqs)
        spec = RecSpec.from_dict({v: self.term(t, bound) for v, t, _ in eqs}, name)
        self._resolving.pop()
        if not check_guarded(spec):
            raise self.error(f"spec {name} is not guarded", pos=pos)
        self.specs[name] = spec
        return spec

    def proc(self, name: str) -> Term:
        if name in self.procs:
            return self.procs[name]
        if name in self._resolving:
            raise self.error(f"proc {name} is defined in terms of itself; use a spec for recursion", name)
        raw, _ = self.raw_procs[name]
        self._resolving.append(name)
        t = self.term(raw, frozenset())
        self._resolving.pop()
        self.procs[name] = t
        return t

    def term(self, t: Term, bound: FrozenSet[str]) -> Term:
        if isinstance(t, Var):
            if t.name in bound:
                return t
            if t.name in self.raw_procs:
                return self.proc(t.name)
            if t.name in self.table.actions:
                return delayable(t.name)
            raise self.error(f"unknown name {t.name}", t.name)
        if isinstance(t, Act):
            if t.name not in (TAU, DELTA) and t.name not in self.table.actions:
                raise self.error(f"undeclared action {t.name}", t.name)
            return t
        if isinstance(t, SpecRef):
            spec = self.spec(t.spec_name)
            if t.var not in spec.variables:
                raise self.error(f"{t.var} is not a variable of spec {t.spec_name}", t.spec_name)
            return Rec(t.var, spec)
        if isinstance(t, _Inline):
            inner = bound | frozenset(v for v, _ in t.equations)
            spec = RecSpec.from_dict({v: self.term(b, inner) for v, b in t.equations})
            if not check_guarded(spec):
                raise self.error(f"inline specification of {t.var} is not guarded", t.var)
            return Rec(t.var, spec)
        if isinstance(t, (Encap, Abstr)):
            unknown = sorted(a for a in t.actions if a not in self.table.actions)
            if unknown:
                raise self.error(f"undeclared action {unknown[0]}", unknown[0])
        children = t.children()
        if not children:
            return t
        return rebuild(t, tuple(self.term(c, bound) for c in children))


def parse(text: str) -> Model:
    """
    Parse and resolve a model file.

    Raises:
        ModelError: syntax errors and unresolved or ill-typed names, with
            line and column where known.
    """
    try:
        tree = get_parser().parse(text)
    except UnexpectedInput as exc:
        raise ModelError(f"syntax error: {str(exc).splitlines()[0]}", exc.line, exc.column) from None
    raw = _ToRaw()
    try:
        decls = raw.transform(tree)
    except VisitError as exc:
        if isinstance(exc.orig_exc, DrtError):
            raise exc.orig_exc from None
        raise

    actions: List[str] = []
    comm: Dict[Tuple[str, str], str] = {}
    handshaking = False
    raw_procs: Dict[str, Tuple[Term, Position]] = {}
    raw_specs: Dict[str, Tuple[list, Position]] = {}
    raw_checks = []
    for kind, value, pos in decls:
        if kind == "actions":
            actions.extend(value)
        elif kind == "comm":
            for a, b, c, p in value:
                key = tuple(sorted((a, b)))
                if key in comm and comm[key] != c:
                    raise ModelError(f"communication {a} | {b} defined twice", *p)
                comm[key] = c
        elif kind == "handshaking":
            handshaking = True
        elif kind == "proc":
            name, t = value
            if name in raw_procs or name in raw_specs:
                raise ModelError(f"name {name} defined twice", *pos)
            raw_procs[name] = (t, pos)
        elif kind == "spec":
            name, eqs = value
            if name in raw_procs or name in raw_specs:
                raise ModelError(f"name {name} defined twice", *pos)
            _check_unique(eqs)
            raw_specs[name] = (eqs, pos)
        elif kind == "check":
            raw_checks.append((value, pos))

    try:
        table = ActionTable.build(actions, comm, handshaking)
    except TermError as exc:
        raise ModelError(str(exc)) from None

    resolver = _Resolver(table, raw.positions, raw_procs, raw_specs)
    try:
        for name in raw_specs:
            resolver.spec(name)
        for name in raw_procs:
            resolver.proc(name)
        checks = []
        for (relation, lhs, rhs, expect), pos in raw_checks:
            if relation not in RELATION_NAMES:
                raise ModelError(f"unknown relation {relation}; expected one of {', '.join(RELATION_NAMES)}", *pos)
            checks.append(CheckDirective(
                relation, resolver.term(lhs, frozenset()), resolver.term(rhs, frozenset()), expect, pos[0],
            ))
    except TermError as exc:
        raise ModelError(str(exc)) from None

    model = Model(table=table, specs=resolver.specs, procs={n: resolver.procs[n] for n in raw_procs}, checks=checks)
    logger.debug(f"parsed model: {model.summary()}")
    return model


def parse_file(path: Union[str, Path]) -> Model:
    return parse(Path(path).read_text(encoding="utf-8"))


def parse_term(text: str, table: ActionTable) -> Term:
    """Parse a single closed term against an action table."""
    actions = ", ".join(sorted(table.actions))
    header = f"actions {actions};\n" if actions else ""
    if table.comm:
        header += "comm " + ", ".join(f"{a} | {b} = {c}" for (a, b), c in sorted(table.comm)) + ";\n"
    if table.handshaking:
        header += "handshaking;\n"
    model = parse(f"{header}proc _main_ = {text};\n")
    return model.proc("_main_")
