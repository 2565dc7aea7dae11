"""
The PAR protocol: sender S, receiver R, data channel K and acknowledgement
channel L, composed as ∂_H(S ∥ K ∥ L ∥ R).

Ports 1 and 2 are external (read datum, deliver datum); ports 3 to 6 are
internal. Frames are pairs of a datum and the alternating bit.
"""
import logging
from typing import List

from ..conf import ERROR_ACTION
from ..dsl.model import Model
from ..terms import (
    Abstr, Act, ActionTable, Delay, Encap, Par, Rec, RecSpec, Term, Var, alt_all, seq_all, sigma_n,
)
from .params import ParParams, ack_action, data_action, frame_action

logger = logging.getLogger(__name__)

BITS = (0, 1)
FRAME_PORTS = (3, 4)
ACK_PORTS = (5, 6)


def _errors_within(t: int) -> Term:
    """Σ_{k ≤ t} σᵏ(error)."""
    return alt_all([sigma_n(Act(ERROR_ACTION), k) for k in range(t + 1)])


def par_actions(p: ParParams) -> List[str]:
    actions = []
    for d in p.data:
        actions += [data_action("r", 1, d), data_action("s", 2, d)]
        for b in BITS:
            for port in FRAME_PORTS:
                actions += [frame_action(kind, port, d, b) for kind in ("s", "r", "c")]
    for port in ACK_PORTS:
        actions += [ack_action(kind, port) for kind in ("s", "r", "c")]
    actions.append(ERROR_ACTION)
    return actions


def par_action_table(p: ParParams) -> ActionTable:
    """s_i | r_i = c_i for the internal ports, handshaking."""
    comm = {}
    for d in p.data:
        for b in BITS:
            for port in FRAME_PORTS:
                comm[(frame_action("s", port, d, b), frame_action("r", port, d, b))] = frame_action("c", port, d, b)
    for port in ACK_PORTS:
        comm[(ack_action("s", port), ack_action("r", port))] = ack_action("c", port)
    return ActionTable.build(par_actions(p), comm, handshaking=True)


def encapsulated_actions(p: ParParams) -> frozenset:
    """H: sends and receives at the internal ports."""
    blocked = set()
    for d in p.data:
        for b in BITS:
            for port in FRAME_PORTS:
                blocked |= {frame_action("s", port, d, b), frame_action("r", port, d, b)}
    for port in ACK_PORTS:
        blocked |= {ack_action("s", port), ack_action("r", port)}
    return frozenset(blocked)


def hidden_actions(p: ParParams) -> frozenset:
    """I: internal communications and channel errors."""
    hidden = {ack_action("c", 5), ack_action("c", 6), ERROR_ACTION}
    for d in p.data:
        for b in BITS:
            hidden |= {frame_action("c", port, d, b) for port in FRAME_PORTS}
    return frozenset(hidden)


def sender_spec(p: ParParams) -> RecSpec:
    eqs = {}
    for b in BITS:
        reads = [seq_all([Act(data_action("r", 1, d)), sigma_n(Var(f"SF_{d}_b{b}"), p.t_s)]) for d in p.data]
        eqs[f"S{b}"] = alt_all(reads + [Delay(Var(f"S{b}"))])
        for d in p.data:
            waiting = [seq_all([sigma_n(Act(ack_action("r", 5)), k), Var(f"S{1 - b}")]) for k in range(p.t_s_prime)]
            retransmit = sigma_n(Var(f"SF_{d}_b{b}"), p.t_s_prime)
            eqs[f"SF_{d}_b{b}"] = seq_all([Act(frame_action("s", 3, d, b)), alt_all(waiting + [retransmit])])
    return RecSpec.from_dict(eqs, "Sender")


def receiver_spec(p: ParParams) -> RecSpec:
    eqs = {}
    for b in BITS:
        ack = sigma_n(Act(ack_action("s", 6)), p.t_r_prime)
        fresh = [
            seq_all([Act(frame_action("r", 4, d, b)), sigma_n(Act(data_action("s", 2, d)), p.t_r), ack, Var(f"R{1 - b}")])
            for d in p.data
        ]
        duplicate = [seq_all([Act(frame_action("r", 4, d, 1 - b)), ack, Var(f"R{b}")]) for d in p.data]
        eqs[f"R{b}"] = alt_all(fresh + duplicate + [Delay(Var(f"R{b}"))])
    return RecSpec.from_dict(eqs, "Receiver")


def channel_k_spec(p: ParParams) -> RecSpec:
    summands = []
    for d in p.data:
        for b in BITS:
            outcome = alt_all([sigma_n(Act(frame_action("s", 4, d, b)), p.t_k), _errors_within(p.t_k)])
            summands.append(seq_all([Act(frame_action("r", 3, d, b)), outcome, Var("K")]))
    return RecSpec.from_dict({"K": alt_all(summands + [Delay(Var("K"))])}, "ChannelK")


def channel_l_spec(p: ParParams) -> RecSpec:
    outcome = alt_all([sigma_n(Act(ack_action("s", 5)), p.t_l), _errors_within(p.t_l)])
    body = alt_all([seq_all([Act(ack_action("r", 6)), outcome, Var("L")]), Delay(Var("L"))])
    return RecSpec.from_dict({"L": body}, "ChannelL")


def system_term(p: ParParams) -> Term:
    """∂_H(S ∥ K ∥ L ∥ R)."""
    s = Rec("S0", sender_spec(p))
    k = Rec("K", channel_k_spec(p))
    l = Rec("L", channel_l_spec(p))
    r = Rec("R0", receiver_spec(p))
    return Encap(encapsulated_actions(p), Par(s, Par(k, Par(l, r))))


def hidden_system_term(p: ParParams) -> Term:
    """τ_I(∂_H(S ∥ K ∥ L ∥ R))."""
    return Abstr(hidden_actions(p), system_term(p))


def build_par_model(p: ParParams) -> Model:
    """
    Model with the component specs and procs System and Hidden.

    Example:
        model = build_par_model(ParParams(t_s_prime=5))
        lts = explore(model.proc("System"), model.table)
    """
    specs = {
        "Sender": sender_spec(p),
        "Receiver": receiver_spec(p),
        "ChannelK": channel_k_spec(p),
        "ChannelL": channel_l_spec(p),
    }
    procs = {
        "System": system_term(p),
        "Hidden": hidden_system_term(p),
    }
    logger.debug(f"built PAR model for {p}")
    return Model(table=par_action_table(p), specs=specs, procs=procs)
