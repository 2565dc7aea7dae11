"""
Reference specifications for the PAR protocol.

- expanded: the system after expansion, with internal communications visible
- untimed: its time-free projection (delayable actions)
- performance: the hidden system, silent steps between delays kept
- dormant: the hidden system after removing silent steps toward dormant states,
  as a recursive specification and in σ-iteration form
- buffer: a one-place buffer over the data
"""
from typing import List

from ..conf import ERROR_ACTION
from ..dsl.model import Model
from ..terms import (
    Abstr, Act, Delay, Rec, RecSpec, TAU_ACT, Term, TimeIter, Var, alt_all, delayable, seq_all, sigma_n,
)
from .params import ParParams, ack_action, data_action, frame_action
from .protocol import BITS, hidden_actions, par_action_table


def _errors_then(p_limit: int, continuation) -> List[Term]:
    """σᵏ(error)·continuation(k) for k ≤ p_limit."""
    return [seq_all([sigma_n(Act(ERROR_ACTION), k), continuation(k)]) for k in range(p_limit + 1)]


def expanded_spec(p: ParParams) -> RecSpec:
    """The guarded specification obtained by expanding ∂_H(S ∥ K ∥ L ∥ R)."""
    p.require_cycle_ok("the expanded specification")
    c5, c6 = Act(ack_action("c", 5)), Act(ack_action("c", 6))
    eqs = {}
    for b in BITS:
        reads = [seq_all([Act(data_action("r", 1, d)), sigma_n(Var(f"Y_{d}_b{b}"), p.t_s)]) for d in p.data]
        eqs[f"X{b}"] = alt_all(reads + [Delay(Var(f"X{b}"))])
        for d in p.data:
            y, z, u, v = (f"{n}_{d}_b{b}" for n in "YZUV")
            c3, c4 = Act(frame_action("c", 3, d, b)), Act(frame_action("c", 4, d, b))
            deliver = seq_all([
                sigma_n(c4, p.t_k), sigma_n(Act(data_action("s", 2, d)), p.t_r), sigma_n(c6, p.t_r_prime), Var(z),
            ])
            eqs[y] = seq_all([c3, alt_all([deliver] + _errors_then(p.t_k, lambda k: sigma_n(Var(y), p.t_s_prime - k)))])
            ack = seq_all([sigma_n(c5, p.t_l), Var(f"X{1 - b}")])
            eqs[z] = alt_all([ack] + _errors_then(
                p.t_l, lambda k: sigma_n(Var(u), p.t_s_prime - (p.t_k + p.t_r + p.t_r_prime + k))))
            resend = seq_all([sigma_n(c4, p.t_k), sigma_n(c6, p.t_r_prime), Var(v)])
            eqs[u] = seq_all([c3, alt_all([resend] + _errors_then(p.t_k, lambda k: sigma_n(Var(u), p.t_s_prime - k)))])
            eqs[v] = alt_all([ack] + _errors_then(
                p.t_l, lambda k: sigma_n(Var(u), p.t_s_prime - (p.t_k + p.t_r_prime + k))))
    return RecSpec.from_dict(eqs, "Expanded")


def untimed_spec(p: ParParams) -> RecSpec:
    """Time-free projection of the expanded specification; every action is delayable."""
    c5, c6, error = delayable(ack_action("c", 5)), delayable(ack_action("c", 6)), delayable(ERROR_ACTION)
    eqs = {}
    for b in BITS:
        eqs[f"X{b}"] = alt_all([seq_all([delayable(data_action("r", 1, d)), Var(f"Y_{d}_b{b}")]) for d in p.data])
        for d in p.data:
            y, z, u, v = (f"{n}_{d}_b{b}" for n in "YZUV")
            c3, c4 = delayable(frame_action("c", 3, d, b)), delayable(frame_action("c", 4, d, b))
            s2 = delayable(data_action("s", 2, d))
            eqs[y] = seq_all([c3, alt_all([seq_all([c4, s2, c6, Var(z)]), seq_all([error, Var(y)])])])
            eqs[z] = alt_all([seq_all([c5, Var(f"X{1 - b}")]), seq_all([error, Var(u)])])
            eqs[u] = seq_all([c3, alt_all([seq_all([c4, c6, Var(v)]), seq_all([error, Var(u)])])])
            eqs[v] = alt_all([seq_all([c5, Var(f"X{1 - b}")]), seq_all([error, Var(u)])])
    return RecSpec.from_dict(eqs, "Untimed")


def _tau_then(t: Term) -> Term:
    return seq_all([TAU_ACT, t])


def performance_spec(p: ParParams) -> RecSpec:
    """τ_I(∂_H(S ∥ K ∥ L ∥ R)) with the silent steps between delays kept."""
    p.require_cycle_ok("the performance specification")
    eqs = {}
    reads = [seq_all([Act(data_action("r", 1, d)), sigma_n(Var(f"Y_{d}"), p.t_s)]) for d in p.data]
    eqs["X"] = alt_all(reads + [Delay(Var("X"))])
    for d in p.data:
        deliver = sigma_n(seq_all([Act(data_action("s", 2, d)), sigma_n(Var("Z"), p.t_r_prime)]), p.t_r)
        retries = [sigma_n(_tau_then(sigma_n(Var(f"Y_{d}"), p.t_s_prime - k)), k) for k in range(p.t_k + 1)]
        eqs[f"Y_{d}"] = alt_all([sigma_n(_tau_then(deliver), p.t_k)] + retries)
    lost_ack = [
        sigma_n(_tau_then(sigma_n(Var("U"), p.t_s_prime - (p.t_k + p.t_r + p.t_r_prime + k))), k)
        for k in range(p.t_l + 1)
    ]
    eqs["Z"] = alt_all([sigma_n(_tau_then(Var("X")), p.t_l)] + lost_ack)
    retries = [sigma_n(_tau_then(sigma_n(Var("U"), p.t_s_prime - k)), k) for k in range(p.t_k + 1)]
    eqs["U"] = alt_all([sigma_n(_tau_then(sigma_n(Var("V"), p.t_r_prime)), p.t_k)] + retries)
    lost_again = [
        sigma_n(_tau_then(sigma_n(Var("U"), p.t_s_prime - (p.t_k + p.t_r_prime + k))), k)
        for k in range(p.t_l + 1)
    ]
    eqs["V"] = alt_all([sigma_n(_tau_then(Var("X")), p.t_l)] + lost_again)
    return RecSpec.from_dict(eqs, "Performance")


def dormant_spec(p: ParParams) -> RecSpec:
    """The hidden system with silent steps toward dormant states removed."""
    p.require_cycle_ok("the dormancy-reduced specification")
    eqs = {}
    reads = [seq_all([Act(data_action("r", 1, d)), sigma_n(Var(f"Y_{d}"), p.t_s)]) for d in p.data]
    eqs["X"] = alt_all(reads + [Delay(Var("X"))])
    next_read = sigma_n(_tau_then(Var("X")), p.t_r_prime + p.t_l)
    for d in p.data:
        after = alt_all([next_read, sigma_n(Var("Z"), p.t_s_prime - (p.t_k + p.t_r))])
        eqs[f"Y_{d}"] = alt_all([
            seq_all([sigma_n(Act(data_action("s", 2, d)), p.t_k + p.t_r), after]),
            sigma_n(Var(f"Y_{d}"), p.t_s_prime),
        ])
    eqs["Z"] = alt_all([sigma_n(_tau_then(Var("X")), p.t_k + p.t_r_prime + p.t_l), sigma_n(Var("Z"), p.t_s_prime)])
    return RecSpec.from_dict(eqs, "Dormant")


def dormant_iterated_term(p: ParParams) -> Rec:
    """
    The dormancy-reduced specification written with σ-iteration:

    X = Σ_d r1(d) · σ^{*t_S'}(σ^{t_S+t_K+t_R}(s2(d)))
              · (σ^{t_R'+t_L}(τ̲·X) + σ^{*t_S'}(σ^{t_R'+t_L+t_S'-t_R}(τ̲·X)))
    """
    p.require_cycle_ok("the σ-iteration form")
    back = _tau_then(Var("X"))
    after = alt_all([
        sigma_n(back, p.t_r_prime + p.t_l),
        TimeIter(p.t_s_prime, sigma_n(back, p.t_r_prime + p.t_l + p.t_s_prime - p.t_r)),
    ])
    summands = [
        seq_all([
            delayable(data_action("r", 1, d)),
            TimeIter(p.t_s_prime, sigma_n(Act(data_action("s", 2, d)), p.t_s + p.t_k + p.t_r)),
            after,
        ])
        for d in p.data
    ]
    return Rec("X", RecSpec.from_dict({"X": alt_all(summands)}, "DormantIterated"))


def buffer_spec(p: ParParams) -> RecSpec:
    """B = Σ_d r1(d)·s2(d)·B with delayable actions."""
    body = alt_all([
        seq_all([delayable(data_action("r", 1, d)), delayable(data_action("s", 2, d)), Var("B")])
        for d in p.data
    ])
    return RecSpec.from_dict({"B": body}, "Buffer")


def reference_specs(p: ParParams) -> Model:
    """
    All reference specifications as one model.

    Raises:
        ParError: when the time-out is premature (the timed specifications
            need non-negative delays).
    """
    p.require_cycle_ok("the reference specifications")
    hidden = hidden_actions(p)
    specs = {
        "Expanded": expanded_spec(p),
        "Untimed": untimed_spec(p),
        "Performance": performance_spec(p),
        "Dormant": dormant_spec(p),
        "Buffer": buffer_spec(p),
    }
    procs = {
        "Expanded": Rec("X0", specs["Expanded"]),
        "HiddenExpanded": Abstr(hidden, Rec("X0", specs["Expanded"])),
        "Untimed": Rec("X0", specs["Untimed"]),
        "HiddenUntimed": Abstr(hidden, Rec("X0", specs["Untimed"])),
        "Performance": Rec("X", specs["Performance"]),
        "Dormant": Rec("X", specs["Dormant"]),
        "DormantIterated": dormant_iterated_term(p),
        "Buffer": Rec("B", specs["Buffer"]),
    }
    return Model(table=par_action_table(p), specs=specs, procs=procs)
