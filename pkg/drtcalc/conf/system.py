import os

# State Space
DEFAULT_MAX_STATES = int(os.environ.get("DRTCALC_MAX_STATES", 100_000))

# Recursion
GUARD_UNFOLD_DEPTH = 8  # Equation unfoldings before a spec counts as unguarded

# Rewriting
REWRITE_STEP_BUDGET = 200_000  # Rule applications per normalization call

# Equivalence Checking
STAMP_PERIOD_CAP = 60  # Largest lcm of sigma-cycle lengths used as stamp horizon period

# Output Config
OUTPUT_DIR = os.environ.get("DRTCALC_OUTPUT_DIR", "artifacts")
LOG_FORMAT = "[%(asctime)s] %(levelname)s - %(message)s"
