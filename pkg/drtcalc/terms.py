"""
Abstract syntax of process terms with discrete relative timing and recursion.

Terms are immutable values. Every node caches its hash, so terms can be used
as dictionary keys (state identity, memo tables) at no repeated cost.
"""
import logging
from dataclasses import dataclass, field, fields
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, Mapping, Optional, Tuple

from .errors import TermError

logger = logging.getLogger(__name__)

TAU = "tau"
DELTA = "delta"
RESERVED = frozenset({TAU, DELTA})


def _node(cls):
    """Turn a Term subclass into a frozen dataclass with cached structural hashing."""
    cls = dataclass(frozen=True, eq=False)(cls)
    cls._fields = tuple(f.name for f in fields(cls))
    return cls


class Term:
    """Base class of all term nodes."""

    _fields: Tuple[str, ...] = ()

    def _key(self) -> tuple:
        return tuple(getattr(self, name) for name in self._fields)

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((type(self).__name__,) + self._key())
            object.__setattr__(self, "_hash", h)
        return h

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if type(self) is not type(other) or hash(self) != hash(other):
            return False
        return self._key() == other._key()

    def __ne__(self, other) -> bool:
        return not self == other

    def children(self) -> Tuple["Term", ...]:
        return tuple(v for v in self._key() if isinstance(v, Term))

    def __str__(self) -> str:
        from .dsl.printer import print_term
        return print_term(self)


@_node
class Terminated(Term):
    """The successfully terminated process √. Only ever a transition target."""


TICK = Terminated()


@_node
class Act(Term):
    """Undelayable action a̲ (name in Act, or tau / delta)."""
    name: str


@_node
class Alt(Term):
    left: Term
    right: Term


@_node
class Seq(Term):
    left: Term
    right: Term


@_node
class Delay(Term):
    """σ(t): idle to the end of the current time slice, then behave as t."""
    body: Term


@_node
class Par(Term):
    left: Term
    right: Term


@_node
class LeftMerge(Term):
    left: Term
    right: Term


@_node
class CommMerge(Term):
    left: Term
    right: Term


@_node
class Encap(Term):
    """∂_H(t)."""
    actions: FrozenSet[str]
    body: Term


@_node
class Abstr(Term):
    """τ_I(t)."""
    actions: FrozenSet[str]
    body: Term


@_node
class Timeout(Term):
    """ν(t): the current-time-slice part of t."""
    body: Term


@_node
class Shift(Term):
    """The process left after one time slice of idling."""
    body: Term


@_node
class TimeFree(Term):
    body: Term


@_node
class TimeIter(Term):
    """σ^{*n}(t) = t + σ^n(σ^{*n}(t))."""
    period: int
    body: Term


@_node
class Var(Term):
    name: str


@dataclass(frozen=True, eq=False)
class RecSpec:
    """
    Recursive specification: equations X = t, stored sorted by variable.

    The optional name is a label for printing and reports; it takes no part in
    equality.
    """
    equations: Tuple[Tuple[str, Term], ...]
    name: Optional[str] = field(default=None)

    @classmethod
    def from_dict(cls, equations: Mapping[str, Term], name: Optional[str] = None) -> "RecSpec":
        return cls(tuple(sorted(equations.items(), key=lambda kv: kv[0])), name)

    def __post_init__(self):
        names = [v for v, _ in self.equations]
        if len(set(names)) != len(names):
            raise TermError(f"duplicate left-hand variable in specification {self.name or ''}")

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(self.equations)
            object.__setattr__(self, "_hash", h)
        return h

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, RecSpec) or hash(self) != hash(other):
            return False
        return self.equations == other.equations

    @property
    def variables(self) -> FrozenSet[str]:
        return frozenset(v for v, _ in self.equations)

    def as_dict(self) -> Dict[str, Term]:
        return dict(self.equations)

    def get(self, var: str) -> Term:
        for v, body in self.equations:
            if v == var:
                return body
        raise TermError(f"variable {var} not defined in specification {self.name or ''}")

    def validate(self) -> None:
        """Every free variable of a right-hand side must be a left-hand variable."""
        bound = self.variables
        for v, body in self.equations:
            unbound = free_vars(body) - bound
            if unbound:
                raise TermError(f"equation for {v} mentions unbound variable(s) {sorted(unbound)}")


@_node
class Rec(Term):
    """Recursion constant ⟨X|E⟩."""
    var: str
    spec: RecSpec

    def __post_init__(self):
        if self.var not in self.spec.variables:
            raise TermError(f"{self.var} is not a variable of its specification")


@dataclass(frozen=True, eq=False)
class ActionTable:
    """
    Observable actions plus the partial commutative communication function.

    Example:
        table = ActionTable.build(["a", "b", "c"], {("a", "b"): "c"}, handshaking=True)
        table.communicate("b", "a")  # 'c'
    """
    actions: FrozenSet[str]
    comm: FrozenSet[Tuple[Tuple[str, str], str]] = frozenset()
    handshaking: bool = False

    @classmethod
    def build(
        cls,
        actions: Iterable[str],
        comm: Optional[Mapping[Tuple[str, str], str]] = None,
        handshaking: bool = False,
    ) -> "ActionTable":
        entries = set()
        for (a, b), c in (comm or {}).items():
            entries.add((tuple(sorted((a, b))), c))
        return cls(frozenset(actions), frozenset(entries), handshaking)

    def __post_init__(self):
        clash = self.actions & RESERVED
        if clash:
            raise TermError(f"reserved names used as actions: {sorted(clash)}")
        lookup: Dict[Tuple[str, str], str] = {}
        for (a, b), c in self.comm:
            for name in (a, b, c):
                if name not in self.actions:
                    raise TermError(f"communication mentions unknown action {name}")
            key = (a, b)
            if key in lookup and lookup[key] != c:
                raise TermError(f"communication {a} | {b} defined twice")
            lookup[(a, b)] = c
            lookup[(b, a)] = c
        object.__setattr__(self, "_lookup", lookup)
        if self.handshaking and not self.is_handshaking():
            raise TermError("communication table declared handshaking but admits a triple synchronization")

    def __hash__(self) -> int:
        return hash((self.actions, self.comm, self.handshaking))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ActionTable):
            return False
        return (self.actions, self.comm, self.handshaking) == (other.actions, other.comm, other.handshaking)

    def communicate(self, a: str, b: str) -> Optional[str]:
        """γ(a, b), or None when undefined (always undefined for tau and delta)."""
        return self._lookup.get((a, b))

    def is_handshaking(self) -> bool:
        results = {c for _, c in self.comm}
        for c in results:
            for x in self.actions:
                if self.communicate(c, x) is not None:
                    return False
        return True

    def as_dict(self) -> dict:
        return {
            "actions": sorted(self.actions),
            "comm": [[a, b, c] for (a, b), c in sorted(self.comm)],
            "handshaking": self.handshaking,
        }


# --- constructors -----------------------------------------------------------

TAU_ACT = Act(TAU)
DELTA_ACT = Act(DELTA)


def sigma_n(t: Term, n: int) -> Term:
    """σ^n(t)."""
    for _ in range(n):
        t = Delay(t)
    return t


def alt_all(terms: Iterable[Term]) -> Term:
    """Right-nested sum; the empty sum is δ̲."""
    items = list(terms)
    if not items:
        return DELTA_ACT
    result = items[-1]
    for t in reversed(items[:-1]):
        result = Alt(t, result)
    return result


def seq_all(terms: Iterable[Term]) -> Term:
    items = list(terms)
    if not items:
        raise TermError("empty sequential composition")
    result = items[-1]
    for t in reversed(items[:-1]):
        result = Seq(t, result)
    return result


def delayable_var(name: str) -> str:
    return f"_{name}"


@lru_cache(maxsize=None)
def delayable(name: str) -> Rec:
    """Delayable action a ≡ ⟨X | X = a̲ + σ(X)⟩."""
    v = delayable_var(name)
    return Rec(v, RecSpec.from_dict({v: Alt(Act(name), Delay(Var(v)))}))


def is_delayable(t: Term) -> Optional[str]:
    """The action name if t is the delayable-action sugar, else None."""
    if not isinstance(t, Rec) or len(t.spec.equations) != 1:
        return None
    body = t.spec.get(t.var)
    if not isinstance(body, Alt):
        return None
    parts = (body.left, body.right)
    for act, dly in (parts, parts[::-1]):
        if isinstance(act, Act) and act.name not in RESERVED and dly == Delay(Var(t.var)):
            return act.name
    return None


# --- traversal ---------------------------------------------------------------

def subterms(t: Term) -> Iterator[Term]:
    """Pre-order traversal, not descending into recursion specifications."""
    yield t
    for child in t.children():
        yield from subterms(child)


def size(t: Term) -> int:
    return sum(1 for _ in subterms(t))


@lru_cache(maxsize=None)
def free_vars(t: Term) -> FrozenSet[str]:
    if isinstance(t, Var):
        return frozenset({t.name})
    if isinstance(t, Rec):
        inner = frozenset().union(*(free_vars(body) for _, body in t.spec.equations))
        return inner - t.spec.variables
    result: FrozenSet[str] = frozenset()
    for child in t.children():
        result |= free_vars(child)
    return result


def is_closed(t: Term) -> bool:
    return not free_vars(t)


def rebuild(t: Term, children: Tuple[Term, ...]) -> Term:
    """Copy of t with its Term-valued fields replaced, in field order."""
    it = iter(children)
    values = [next(it) if isinstance(v, Term) else v for v in t._key()]
    return type(t)(*values)


def substitute(t: Term, binding: Mapping[str, Term]) -> Term:
    """
    Capture-avoiding substitution of free variables.

    Variables bound by a recursion constant's specification are not replaced
    inside it; if a substituted term mentions such a variable free, the
    specification is renamed apart first.

    Example:
        substitute(Seq(Act("a"), Var("X")), {"X": Delay(Act("b"))})
    """
    if not binding:
        return t
    if isinstance(t, Var):
        return binding.get(t.name, t)
    if isinstance(t, Rec):
        inner = {k: v for k, v in binding.items() if k not in t.spec.variables}
        inner = {k: v for k, v in inner.items() if k in free_vars(t)}
        if not inner:
            return t
        incoming = frozenset().union(*(free_vars(v) for v in inner.values()))
        spec, var = t.spec, t.var
        clash = incoming & spec.variables
        if clash:
            spec, renaming = rename_apart(spec, incoming | frozenset(inner))
            var = renaming[var]
        eqs = {v: substitute(body, inner) for v, body in spec.equations}
        return Rec(var, RecSpec.from_dict(eqs, spec.name))
    if not t.children():
        return t
    return rebuild(t, tuple(substitute(c, binding) for c in t.children()))


def fresh_name(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    if base not in taken:
        return base
    i = 1
    while f"{base}{i}" in taken:
        i += 1
    return f"{base}{i}"


def rename_apart(spec: RecSpec, avoid: FrozenSet[str]) -> Tuple[RecSpec, Dict[str, str]]:
    """Rename the variables of spec so that none is in avoid."""
    taken = set(avoid) | set(spec.variables)
    renaming: Dict[str, str] = {}
    for v in sorted(spec.variables):
        if v in avoid:
            new = fresh_name(v, taken)
            taken.add(new)
            renaming[v] = new
        else:
            renaming[v] = v
    as_vars = {old: Var(new) for old, new in renaming.items() if old != new}
    eqs = {renaming[v]: substitute(body, as_vars) for v, body in spec.equations}
    return RecSpec.from_dict(eqs, spec.name), renaming


@lru_cache(maxsize=None)
def unfold(t: Rec) -> Term:
    """One unfolding of ⟨X|E⟩: the right-hand side of X with every Y replaced by ⟨Y|E⟩."""
    binding = {v: Rec(v, t.spec) for v in t.spec.variables}
    return substitute(t.spec.get(t.var), binding)


# --- structural order ----------------------------------------------------------

_TAGS = {
    Terminated: 0, Act: 1, Var: 2, Rec: 3, Delay: 4, Seq: 5, Alt: 6, Par: 7,
    LeftMerge: 8, CommMerge: 9, Encap: 10, Abstr: 11, Timeout: 12, Shift: 13,
    TimeFree: 14, TimeIter: 15,
}


def sort_key(t: Term) -> tuple:
    """Fixed total structural order: constructor tag first, then fields."""
    key = t.__dict__.get("_sort")
    if key is not None:
        return key
    parts = []
    for value in t._key():
        if isinstance(value, Term):
            parts.append(sort_key(value))
        elif isinstance(value, RecSpec):
            parts.append(tuple((v, sort_key(body)) for v, body in value.equations))
        elif isinstance(value, frozenset):
            parts.append(tuple(sorted(value)))
        else:
            parts.append(value)
    key = (_TAGS[type(t)], tuple(parts))
    object.__setattr__(t, "_sort", key)
    return key
