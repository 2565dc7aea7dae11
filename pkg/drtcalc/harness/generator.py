"""
Seeded random closed terms for the property suites.
"""
from dataclasses import dataclass, replace
from typing import List, Optional, Tuple

import numpy as np

from ..conf import HARNESS_ACTIONS, HARNESS_COMM, MAX_TERM_SIZE
from ..terms import (
    Abstr, Act, ActionTable, Alt, CommMerge, DELTA_ACT, Delay, Encap, LeftMerge, Par, Rec, RecSpec,
    Seq, TAU_ACT, Term, Timeout, Var, delayable,
)


def harness_table() -> ActionTable:
    """Action table of the suites: a | b = c, handshaking."""
    return ActionTable.build(HARNESS_ACTIONS, HARNESS_COMM, handshaking=True)


@dataclass(frozen=True)
class GenOptions:
    """Constructor selection for gen_closed_term."""
    actions: Tuple[str, ...] = HARNESS_ACTIONS
    silent: bool = True  # τ̲ as a constant
    deadlock: bool = True  # δ̲ as a constant
    merges: bool = True  # ∥, ⫦ and |
    encapsulation: bool = True
    abstraction: bool = True
    timeout: bool = True
    recursion: bool = True  # small guarded specifications
    delayable: bool = True  # delayable actions (recursion sugar)
    max_size: int = MAX_TERM_SIZE

    @classmethod
    def bpa(cls, **overrides) -> "GenOptions":
        """Sequential fragment: no merges and no encapsulation."""
        return replace(cls(merges=False, encapsulation=False), **overrides)

    @classmethod
    def recursion_free(cls, **overrides) -> "GenOptions":
        return replace(cls(recursion=False, delayable=False), **overrides)

    @classmethod
    def regular(cls, **overrides) -> "GenOptions":
        """Terms with finite state spaces that linearization accepts (no abstraction)."""
        return replace(cls(abstraction=False), **overrides)


class TermGenerator:
    """
    Random term construction from one numpy generator.

    Example:
        gen = TermGenerator(np.random.default_rng(7), GenOptions.bpa())
        t = gen.term(5)
    """

    def __init__(self, rng: np.random.Generator, options: GenOptions):
        self.rng = rng
        self.options = options

    def pick(self, items):
        return items[int(self.rng.integers(len(items)))]

    def action(self) -> str:
        return self.pick(list(self.options.actions))

    def action_set(self) -> frozenset:
        mask = self.rng.random(len(self.options.actions)) < 0.5
        return frozenset(a for a, keep in zip(self.options.actions, mask) if keep)

    def constant(self) -> Term:
        choices: List[Term] = [Act(a) for a in self.options.actions]
        if self.options.silent:
            choices.append(TAU_ACT)
        if self.options.deadlock:
            choices.append(DELTA_ACT)
        if self.options.delayable:
            choices.append(delayable(self.action()))
        return self.pick(choices)

    def term(self, size: int) -> Term:
        size = max(1, min(size, self.options.max_size))
        if size == 1:
            return self.constant()
        kinds = ["delay"]
        if self.options.timeout:
            kinds.append("timeout")
        if self.options.encapsulation:
            kinds.append("encap")
        if self.options.abstraction:
            kinds.append("abstr")
        if size >= 3:
            kinds += ["alt", "alt", "seq", "seq"]
            if self.options.merges:
                kinds += ["par", "left_merge", "comm_merge"]
            if self.options.recursion:
                kinds.append("rec")
        kind = self.pick(kinds)
        if kind == "delay":
            return Delay(self.term(size - 1))
        if kind == "timeout":
            return Timeout(self.term(size - 1))
        if kind == "encap":
            return Encap(self.action_set(), self.term(size - 1))
        if kind == "abstr":
            return Abstr(self.action_set(), self.term(size - 1))
        if kind == "rec":
            return self.recursion(size)
        left = 1 + int(self.rng.integers(size - 2))
        x, y = self.term(left), self.term(size - 1 - left)
        return {"alt": Alt, "seq": Seq, "par": Par, "left_merge": LeftMerge, "comm_merge": CommMerge}[kind](x, y)

    def recursion(self, size: int) -> Rec:
        """⟨X | X = a̲·X + s⟩ or ⟨X | X = σ(X) + s⟩ with s closed."""
        rest = self.term(size - 2)
        if self.rng.random() < 0.5:
            loop = Seq(Act(self.action()), Var("X"))
        else:
            loop = Delay(Var("X"))
        return Rec("X", RecSpec.from_dict({"X": Alt(loop, rest)}))

    def spec(self, variables: int = 2) -> RecSpec:
        """Small guarded specification X0..Xk, every variable occurrence action- or σ-guarded."""
        names = [f"X{i}" for i in range(variables)]
        eqs = {}
        for name in names:
            summands: List[Term] = []
            for _ in range(1 + int(self.rng.integers(2))):
                target = Var(self.pick(names))
                if self.rng.random() < 0.7:
                    summands.append(Seq(Act(self.action()), target))
                else:
                    summands.append(Delay(target))
            if self.rng.random() < 0.5:
                summands.append(self.term(1 + int(self.rng.integers(2))))
            body = summands[0]
            for s in summands[1:]:
                body = Alt(body, s)
            eqs[name] = body
        return RecSpec.from_dict(eqs)


def gen_closed_term(seed: int, size: int, options: Optional[GenOptions] = None) -> Term:
    """
    Deterministic closed term of at most `size` nodes for the given seed.

    Size 1 gives a single constant; larger sizes pick a constructor allowed
    by the options and split the remaining size among the operands.
    """
    rng = np.random.default_rng(seed)
    return TermGenerator(rng, options or GenOptions()).term(size)
