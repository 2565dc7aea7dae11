"""
Concrete syntax for terms and models.

print_term output parses back to a term that canonicalizes to the same value.
"""
from typing import List, Mapping, Optional

from ..terms import (
    Abstr, Act, Alt, CommMerge, DELTA, Delay, Encap, LeftMerge, Par, Rec, RecSpec,
    Seq, Shift, TAU, Term, Terminated, TimeFree, TimeIter, Timeout, Var, is_delayable,
)

_ALT, _MERGE, _SEQ, _ATOM = range(4)

_MERGE_OPS = {Par: "||", LeftMerge: "|_", CommMerge: "|"}


def _level(t: Term) -> int:
    if isinstance(t, Alt):
        return _ALT
    if type(t) in _MERGE_OPS:
        return _MERGE
    if isinstance(t, Seq):
        return _SEQ
    return _ATOM


def _actions(names) -> str:
    return "{" + ", ".join(sorted(names)) + "}"


class _Printer:
    def __init__(self, specs: Optional[Mapping[str, RecSpec]] = None):
        self.named = {spec: name for name, spec in (specs or {}).items()}

    def wrap(self, t: Term, ok: bool) -> str:
        text = self.show(t)
        return text if ok else f"({text})"

    def show(self, t: Term) -> str:
        if isinstance(t, Act):
            if t.name in (TAU, DELTA):
                return t.name
            return f"u({t.name})"
        if isinstance(t, Var):
            return t.name
        if isinstance(t, Terminated):
            return "TICK"
        if isinstance(t, Alt):
            parts = []
            stack = [t]
            while stack:
                s = stack.pop()
                if isinstance(s, Alt):
                    stack.extend((s.right, s.left))
                else:
                    parts.append(self.wrap(s, _level(s) > _ALT))
            return " + ".join(parts)
        if type(t) in _MERGE_OPS:
            left = self.wrap(t.left, _level(t.left) > _MERGE)
            right = self.wrap(t.right, _level(t.right) >= _MERGE)
            return f"{left} {_MERGE_OPS[type(t)]} {right}"
        if isinstance(t, Seq):
            left = self.wrap(t.left, _level(t.left) > _SEQ)
            right = self.wrap(t.right, _level(t.right) >= _SEQ)
            return f"{left} . {right}"
        if isinstance(t, Delay):
            n, body = 0, t
            while isinstance(body, Delay):
                n, body = n + 1, body.body
            return f"sigma({self.show(body)})" if n == 1 else f"sigma^{n}({self.show(body)})"
        if isinstance(t, TimeIter):
            return f"sigma*{t.period}({self.show(t.body)})"
        if isinstance(t, Encap):
            return f"encap({_actions(t.actions)}, {self.show(t.body)})"
        if isinstance(t, Abstr):
            return f"hide({_actions(t.actions)}, {self.show(t.body)})"
        if isinstance(t, Timeout):
            return f"to({self.show(t.body)})"
        if isinstance(t, TimeFree):
            return f"tf({self.show(t.body)})"
        if isinstance(t, Shift):
            return f"shift({self.show(t.body)})"
        if isinstance(t, Rec):
            name = is_delayable(t)
            if name is not None:
                return name
            if t.spec in self.named:
                return f"<{t.var} | {self.named[t.spec]}>"
            eqs = " ".join(f"{v} = {self.show(body)};" for v, body in t.spec.equations)
            return f"<{t.var} | {eqs} >"
        raise TypeError(f"cannot print {type(t).__name__}")


def print_term(t: Term, specs: Optional[Mapping[str, RecSpec]] = None) -> str:
    """
    Text of t. Constants of the given named specs are printed as `<X | Name>`.

    Example:
        print_term(Seq(Act("a"), Delay(Act("b"))))  # 'u(a) . sigma(u(b))'
    """
    return _Printer(specs).show(t)


def print_model(model) -> str:
    """Model file text: declarations, specs, procs, then check directives."""
    table = model.table
    lines: List[str] = []
    if table.actions:
        lines.append(f"actions {', '.join(sorted(table.actions))};")
    if table.comm:
        entries = ", ".join(f"{a} | {b} = {c}" for (a, b), c in sorted(table.comm))
        lines.append(f"comm {entries};")
    if table.handshaking:
        lines.append("handshaking;")
    printer = _Printer(model.specs)
    for name, spec in model.specs.items():
        lines.append(f"spec {name} {{")
        for v, body in spec.equations:
            lines.append(f"  {v} = {printer.show(body)};")
        lines.append("}")
    for name, t in model.procs.items():
        lines.append(f"proc {name} = {printer.show(t)};")
    for check in model.checks:
        expect = f" expect {check.expect}" if check.expect else ""
        lines.append(f"check {check.relation} {printer.show(check.lhs)} ~ {printer.show(check.rhs)}{expect};")
    return "\n".join(lines) + "\n"
