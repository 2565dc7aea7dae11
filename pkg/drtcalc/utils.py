"""
drtcalc utilities: seeding and logging setup shared by the CLI and scripts.
"""
import logging
import random
import sys

import numpy as np

from .conf import LOG_FORMAT

logger = logging.getLogger(__name__)


def fix_seed(seed: int = 42) -> None:
    """
    Fix the global random seeds. The suites draw from their own seeded
    generators; this covers anything that falls back to the global state.
    """
    random.seed(seed)
    np.random.seed(seed)
    logger.debug(f"Random seed fixed: {seed}")


def setup_logging(level: str = "WARNING") -> None:
    """One stderr handler on the package logger; stdout stays machine readable."""
    root = logging.getLogger("drtcalc")
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(handler)
    root.setLevel(getattr(logging, level.upper(), logging.WARNING))
