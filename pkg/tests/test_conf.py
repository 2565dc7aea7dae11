import importlib

import pytest

from drtcalc.conf import harness, par, system


def test_system_config():
    """Verify system config exports bounds and output settings."""
    assert hasattr(system, "DEFAULT_MAX_STATES")
    assert isinstance(system.DEFAULT_MAX_STATES, int)
    assert system.DEFAULT_MAX_STATES > 0
    assert system.GUARD_UNFOLD_DEPTH >= 1
    assert isinstance(system.OUTPUT_DIR, str)


def test_max_states_from_environment(monkeypatch):
    """The default state bound can be overridden through the environment."""
    monkeypatch.setenv("DRTCALC_MAX_STATES", "1234")
    reloaded = importlib.reload(system)
    try:
        assert reloaded.DEFAULT_MAX_STATES == 1234
    finally:
        monkeypatch.undo()
        importlib.reload(system)


def test_harness_config():
    """Verify the sampling defaults and the harness action table."""
    assert harness.DEFAULT_SAMPLES == 100
    assert harness.DEFAULT_SEED == 42
    assert set(harness.HARNESS_ACTIONS) == {"a", "b", "c", "d"}
    assert harness.HARNESS_COMM == {("a", "b"): "c"}


def test_par_config():
    """Verify PAR defaults give a non-premature time-out."""
    params = par.DEFAULT_PAR_PARAMS
    for key in ("data_count", "t_s", "t_r", "t_k", "t_l", "t_s_prime", "t_r_prime"):
        assert key in params
        assert isinstance(params[key], int)
    cycle = params["t_k"] + params["t_r"] + params["t_r_prime"] + params["t_l"]
    assert params["t_s_prime"] > cycle
    assert par.DEFAULT_HORIZON == 20


def test_package_level_import():
    """Verify drtcalc.conf re-exports every sub-config."""
    from drtcalc import conf
    assert conf.DEFAULT_MAX_STATES == system.DEFAULT_MAX_STATES
    assert conf.DEFAULT_PAR_PARAMS == par.DEFAULT_PAR_PARAMS
    assert conf.INSTANCE_STATE_BOUND == harness.INSTANCE_STATE_BOUND
