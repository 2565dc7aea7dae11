from dataclasses import asdict, dataclass
from typing import Any, Dict, List

from ..conf import ACK, DATA_PREFIX, DEFAULT_PAR_PARAMS
from ..errors import ParError


@dataclass(frozen=True)
class ParParams:
    """Timing and data parameters of the PAR protocol (times in time slices)."""
    data_count: int = DEFAULT_PAR_PARAMS["data_count"]  # |D|
    t_s: int = DEFAULT_PAR_PARAMS["t_s"]  # sender: read datum -> send frame
    t_r: int = DEFAULT_PAR_PARAMS["t_r"]  # receiver: read frame -> deliver datum
    t_k: int = DEFAULT_PAR_PARAMS["t_k"]  # data channel latency
    t_l: int = DEFAULT_PAR_PARAMS["t_l"]  # acknowledgement channel latency
    t_s_prime: int = DEFAULT_PAR_PARAMS["t_s_prime"]  # sender time-out
    t_r_prime: int = DEFAULT_PAR_PARAMS["t_r_prime"]  # receiver: deliver -> send acknowledgement

    def __post_init__(self):
        if self.data_count < 1:
            raise ParError(f"data_count must be at least 1, got {self.data_count}")
        for name in ("t_s", "t_r", "t_k", "t_l", "t_s_prime", "t_r_prime"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ParError(f"{name} must be a positive number of time slices, got {value}")

    @property
    def cycle(self) -> int:
        """Length of a complete protocol cycle."""
        return self.t_k + self.t_r + self.t_r_prime + self.t_l

    @property
    def cycle_ok(self) -> bool:
        """The time-out is not premature."""
        return self.t_s_prime > self.cycle

    def require_cycle_ok(self, what: str) -> None:
        if not self.cycle_ok:
            raise ParError(f"{what} requires t_s_prime > t_k + t_r + t_r_prime + t_l ({self.t_s_prime} <= {self.cycle})")

    @property
    def data(self) -> List[str]:
        return [f"{DATA_PREFIX}{i}" for i in range(self.data_count)]

    def to_dict(self) -> Dict[str, Any]:
        out = asdict(self)
        out["cycle_ok"] = self.cycle_ok
        return out


# Action names: port, datum or ack, alternating bit.

def frame_action(kind: str, port: int, d: str, b: int) -> str:
    return f"{kind}{port}_{d}_b{b}"


def data_action(kind: str, port: int, d: str) -> str:
    return f"{kind}{port}_{d}"


def ack_action(kind: str, port: int) -> str:
    return f"{kind}{port}_{ACK}"
