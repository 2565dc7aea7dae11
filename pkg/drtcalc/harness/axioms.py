"""
Registry of the axiom schemas with instance generators.

Each schema instantiates its variables with generated closed terms and its
action variables with actions satisfying the side conditions. Axioms without
silent-step content are checked under strong bisimilarity, the silent-step
axioms under rooted time-stamped branching bisimilarity, the dormancy axiom
under the dormancy-aware relation and the time-free projection axioms after
abstracting from time.
"""
from dataclasses import dataclass
from typing import Callable, Dict, List, Tuple

from ..conf import HARNESS_ACTIONS, HARNESS_COMM
from ..terms import (
    Abstr, Act, Alt, CommMerge, DELTA, DELTA_ACT, Delay, Encap, LeftMerge, Par, Rec, RecSpec, Seq,
    Shift, TAU, TAU_ACT, Term, TimeFree, Timeout, Var, sigma_n, unfold,
)
from .generator import GenOptions, TermGenerator

Instance = Tuple[Term, Term]


@dataclass(frozen=True)
class Axiom:
    id: str
    relation: str
    group: str
    instantiate: Callable[[TermGenerator], Instance]
    options: GenOptions = GenOptions()


AXIOMS: Dict[str, Axiom] = {}


def axiom(axiom_id: str, relation: str = "strong", group: str = "core", options: GenOptions = GenOptions()):
    def register(fn: Callable[[TermGenerator], Instance]) -> Callable[[TermGenerator], Instance]:
        AXIOMS[axiom_id] = Axiom(axiom_id, relation, group, fn, options)
        return fn
    return register


def get_axiom(axiom_id: str) -> Axiom:
    if axiom_id not in AXIOMS:
        raise KeyError(f"unknown axiom id {axiom_id!r}; available: {', '.join(AXIOMS)}")
    return AXIOMS[axiom_id]


def axiom_ids() -> List[str]:
    return list(AXIOMS)


# --- operands -----------------------------------------------------------------

def _x(gen: TermGenerator) -> Term:
    return gen.term(1 + int(gen.rng.integers(3)))


def _a(gen: TermGenerator) -> str:
    """a ∈ Act ∪ {τ, δ}."""
    return gen.pick(list(HARNESS_ACTIONS) + [TAU, DELTA])


def _a_tau(gen: TermGenerator) -> str:
    """a ∈ Act ∪ {τ}."""
    return gen.pick(list(HARNESS_ACTIONS) + [TAU])


def _split(gen: TermGenerator, member: bool) -> Tuple[str, frozenset]:
    """An action and a set of observable actions, the action in the set iff member."""
    a = gen.action() if member else _a(gen)
    actions = set(gen.action_set())
    if member:
        actions.add(a)
    else:
        actions.discard(a)
    return a, frozenset(actions)


# --- alternative and sequential composition ------------------------------------

@axiom("A1")
def _a1(gen):
    x, y = _x(gen), _x(gen)
    return Alt(x, y), Alt(y, x)


@axiom("A2")
def _a2(gen):
    x, y, z = _x(gen), _x(gen), _x(gen)
    return Alt(Alt(x, y), z), Alt(x, Alt(y, z))


@axiom("A3")
def _a3(gen):
    x = _x(gen)
    return Alt(x, x), x


@axiom("A4")
def _a4(gen):
    x, y, z = _x(gen), _x(gen), _x(gen)
    return Seq(Alt(x, y), z), Alt(Seq(x, z), Seq(y, z))


@axiom("A5")
def _a5(gen):
    x, y, z = _x(gen), _x(gen), _x(gen)
    return Seq(Seq(x, y), z), Seq(x, Seq(y, z))


@axiom("A6DR")
def _a6(gen):
    x = _x(gen)
    return Alt(x, DELTA_ACT), x


@axiom("A7DR")
def _a7(gen):
    return Seq(DELTA_ACT, _x(gen)), DELTA_ACT


# --- delay ----------------------------------------------------------------------

@axiom("DRT1", group="time")
def _drt1(gen):
    x, y = _x(gen), _x(gen)
    return Alt(Delay(x), Delay(y)), Delay(Alt(x, y))


@axiom("DRT2", group="time")
def _drt2(gen):
    x, y = _x(gen), _x(gen)
    return Seq(Delay(x), y), Delay(Seq(x, y))


# --- encapsulation and abstraction -----------------------------------------------

@axiom("D1DR")
def _d1(gen):
    a, h = _split(gen, member=False)
    return Encap(h, Act(a)), Act(a)


@axiom("D2DR")
def _d2(gen):
    a, h = _split(gen, member=True)
    return Encap(h, Act(a)), DELTA_ACT


@axiom("D3")
def _d3(gen):
    h, x, y = gen.action_set(), _x(gen), _x(gen)
    return Encap(h, Alt(x, y)), Alt(Encap(h, x), Encap(h, y))


@axiom("D4")
def _d4(gen):
    h, x, y = gen.action_set(), _x(gen), _x(gen)
    return Encap(h, Seq(x, y)), Seq(Encap(h, x), Encap(h, y))


@axiom("DRD", group="time")
def _drd(gen):
    h, x = gen.action_set(), _x(gen)
    return Encap(h, Delay(x)), Delay(Encap(h, x))


@axiom("TI1DR")
def _ti1(gen):
    a, i = _split(gen, member=False)
    return Abstr(i, Act(a)), Act(a)


@axiom("TI2DR")
def _ti2(gen):
    a, i = _split(gen, member=True)
    return Abstr(i, Act(a)), TAU_ACT


@axiom("TI3")
def _ti3(gen):
    i, x, y = gen.action_set(), _x(gen), _x(gen)
    return Abstr(i, Alt(x, y)), Alt(Abstr(i, x), Abstr(i, y))


@axiom("TI4")
def _ti4(gen):
    i, x, y = gen.action_set(), _x(gen), _x(gen)
    return Abstr(i, Seq(x, y)), Seq(Abstr(i, x), Abstr(i, y))


@axiom("DRTI", group="time")
def _drti(gen):
    i, x = gen.action_set(), _x(gen)
    return Abstr(i, Delay(x)), Delay(Abstr(i, x))


# --- merges ---------------------------------------------------------------------

@axiom("CM1", group="merge")
def _cm1(gen):
    x, y = _x(gen), _x(gen)
    return Par(x, y), Alt(Alt(LeftMerge(x, y), LeftMerge(y, x)), CommMerge(x, y))


@axiom("CM2DR", group="merge")
def _cm2(gen):
    a, x = Act(_a(gen)), _x(gen)
    return LeftMerge(a, x), Seq(a, x)


@axiom("CM3DR", group="merge")
def _cm3(gen):
    a, x, y = Act(_a(gen)), _x(gen), _x(gen)
    return LeftMerge(Seq(a, x), y), Seq(a, Par(x, y))


@axiom("DRCM1", group="merge")
def _drcm1(gen):
    x, y = _x(gen), _x(gen)
    return LeftMerge(Delay(x), Timeout(y)), DELTA_ACT


@axiom("DRCM2", group="merge")
def _drcm2(gen):
    x, y, z = _x(gen), _x(gen), _x(gen)
    return LeftMerge(Delay(x), Alt(Timeout(y), Delay(z))), Delay(LeftMerge(x, z))


@axiom("CM4", group="merge")
def _cm4(gen):
    x, y, z = _x(gen), _x(gen), _x(gen)
    return LeftMerge(Alt(x, y), z), Alt(LeftMerge(x, z), LeftMerge(y, z))


@axiom("CM5DR", group="merge")
def _cm5(gen):
    a, b, x = Act(_a(gen)), Act(_a(gen)), _x(gen)
    return CommMerge(Seq(a, x), b), Seq(CommMerge(a, b), x)


@axiom("CM6DR", group="merge")
def _cm6(gen):
    a, b, x = Act(_a(gen)), Act(_a(gen)), _x(gen)
    return CommMerge(a, Seq(b, x)), Seq(CommMerge(a, b), x)


@axiom("CM7DR", group="merge")
def _cm7(gen):
    a, b, x, y = Act(_a(gen)), Act(_a(gen)), _x(gen), _x(gen)
    return CommMerge(Seq(a, x), Seq(b, y)), Seq(CommMerge(a, b), Par(x, y))


@axiom("DRCM3", group="merge")
def _drcm3(gen):
    x, y = _x(gen), _x(gen)
    return CommMerge(Timeout(x), Delay(y)), DELTA_ACT


@axiom("DRCM4", group="merge")
def _drcm4(gen):
    x, y = _x(gen), _x(gen)
    return CommMerge(Delay(x), Timeout(y)), DELTA_ACT


@axiom("DRCM5", group="merge")
def _drcm5(gen):
    x, y = _x(gen), _x(gen)
    return CommMerge(Delay(x), Delay(y)), Delay(CommMerge(x, y))


@axiom("CM8", group="merge")
def _cm8(gen):
    x, y, z = _x(gen), _x(gen), _x(gen)
    return CommMerge(Alt(x, y), z), Alt(CommMerge(x, z), CommMerge(y, z))


@axiom("CM9", group="merge")
def _cm9(gen):
    x, y, z = _x(gen), _x(gen), _x(gen)
    return CommMerge(x, Alt(y, z)), Alt(CommMerge(x, y), CommMerge(x, z))


@axiom("CFDR", group="merge")
def _cfdr(gen):
    (a, b), c = gen.pick(list(HARNESS_COMM.items()))
    if gen.rng.random() < 0.5:
        a, b = b, a
    return CommMerge(Act(a), Act(b)), Act(c)


# --- time-out --------------------------------------------------------------------

@axiom("DRTO1", group="time")
def _drto1(gen):
    a = Act(_a(gen))
    return Timeout(a), a


@axiom("DRTO2", group="time")
def _drto2(gen):
    x, y = _x(gen), _x(gen)
    return Timeout(Alt(x, y)), Alt(Timeout(x), Timeout(y))


@axiom("DRTO3", group="time")
def _drto3(gen):
    x, y = _x(gen), _x(gen)
    return Timeout(Seq(x, y)), Seq(Timeout(x), y)


@axiom("DRTO4", group="time")
def _drto4(gen):
    return Timeout(Delay(_x(gen))), DELTA_ACT


# --- silent step -----------------------------------------------------------------

@axiom("DRB1", relation="rb-ts", group="silent")
def _drb1(gen):
    a = Act(_a_tau(gen))
    return Seq(a, TAU_ACT), a


@axiom("DRB2", relation="rb-ts", group="silent")
def _drb2(gen):
    a, x, y = Act(_a_tau(gen)), _x(gen), _x(gen)
    kept = Alt(Timeout(x), y)
    return Seq(a, Alt(Seq(TAU_ACT, kept), Timeout(x))), Seq(a, kept)


@axiom("DRB3", relation="rb-ts", group="silent")
def _drb3(gen):
    a, x, y = Act(_a_tau(gen)), _x(gen), _x(gen)
    kept = Alt(Timeout(x), y)
    return Seq(a, Alt(Seq(TAU_ACT, kept), y)), Seq(a, kept)


@axiom("DRB4", relation="rb-ts", group="silent")
def _drb4(gen):
    a, x, y = Act(_a_tau(gen)), _x(gen), _x(gen)
    return Seq(a, Alt(Delay(Seq(TAU_ACT, x)), Timeout(y))), Seq(a, Alt(Delay(x), Timeout(y)))


@axiom("DRB5", relation="da-rb", group="dormancy", options=GenOptions.bpa())
def _drb5(gen):
    a, x, y = Act(_a_tau(gen)), _x(gen), _x(gen)
    n = int(gen.rng.integers(3))
    lhs = Seq(a, Alt(sigma_n(Seq(TAU_ACT, Delay(x)), n), y))
    rhs = Seq(a, Alt(sigma_n(Delay(x), n), y))
    return lhs, rhs


# --- shift -------------------------------------------------------------------------

@axiom("DRSH1", group="shift")
def _drsh1(gen):
    return Shift(Act(_a(gen))), DELTA_ACT


@axiom("DRSH2", group="shift")
def _drsh2(gen):
    x, y = _x(gen), _x(gen)
    return Shift(Alt(x, y)), Alt(Shift(x), Shift(y))


@axiom("DRSH3", group="shift")
def _drsh3(gen):
    x, y = _x(gen), _x(gen)
    return Shift(Seq(x, y)), Seq(Shift(x), y)


@axiom("DRSH4", group="shift")
def _drsh4(gen):
    x = _x(gen)
    return Shift(Delay(x)), x


# --- time-free projection ------------------------------------------------------------

_TF_OPTIONS = GenOptions.bpa(recursion=False, delayable=False)


def _tf_constant(a: str) -> Rec:
    """⟨X | X = a̲ + σ(X)⟩."""
    return Rec("X", RecSpec.from_dict({"X": Alt(Act(a), Delay(Var("X")))}))


@axiom("DRTFP1", relation="untimed-rb", group="time-free", options=_TF_OPTIONS)
def _drtfp1(gen):
    a = _a(gen)
    return TimeFree(Act(a)), _tf_constant(a)


@axiom("DRTFP2", relation="untimed-rb", group="time-free", options=_TF_OPTIONS)
def _drtfp2(gen):
    x, y = _x(gen), _x(gen)
    return TimeFree(Alt(x, y)), Alt(TimeFree(x), TimeFree(y))


@axiom("DRTFP3", relation="untimed-rb", group="time-free", options=_TF_OPTIONS)
def _drtfp3(gen):
    x, y = _x(gen), _x(gen)
    return TimeFree(Seq(x, y)), Seq(TimeFree(x), TimeFree(y))


@axiom("DRTFP4", relation="untimed-rb", group="time-free", options=_TF_OPTIONS)
def _drtfp4(gen):
    x = _x(gen)
    return TimeFree(Delay(x)), TimeFree(x)


# --- recursion -------------------------------------------------------------------------

@axiom("RDP", group="recursion")
def _rdp(gen):
    spec = gen.spec(1 + int(gen.rng.integers(3)))
    var = gen.pick(sorted(spec.variables))
    constant = Rec(var, spec)
    return constant, unfold(constant)
