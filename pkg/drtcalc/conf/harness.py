# Sampling
DEFAULT_SAMPLES = 100
DEFAULT_SEED = 42
MAX_TERM_SIZE = 7
INSTANCE_STATE_BOUND = 2_000

# Action table used for generated terms: a | b = c, handshaking
HARNESS_ACTIONS = ("a", "b", "c", "d")
HARNESS_COMM = {("a", "b"): "c"}
