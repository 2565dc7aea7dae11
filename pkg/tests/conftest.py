import pytest

from drtcalc.par import ParParams
from drtcalc.terms import ActionTable


@pytest.fixture
def table():
    """a | b = c, plus an unrelated action d."""
    return ActionTable.build(["a", "b", "c", "d"], {("a", "b"): "c"}, handshaking=True)


@pytest.fixture
def plain_table():
    return ActionTable.build(["a", "b", "c", "d"])


@pytest.fixture
def par_params():
    """Unit delays, time-out 5: the protocol cycle is 4."""
    return ParParams(data_count=1, t_s=1, t_r=1, t_k=1, t_l=1, t_s_prime=5, t_r_prime=1)


@pytest.fixture
def premature_params():
    return ParParams(data_count=1, t_s=1, t_r=1, t_k=1, t_l=1, t_s_prime=4, t_r_prime=1)
