from .basic import Eliminator, is_basic, to_basic_term
from .expansion import expand_merge, merge_components
from .linear import is_linear, linearize
from .tsbasic import is_ts_basic, to_ts_basic

__all__ = [
    "Eliminator", "is_basic", "to_basic_term", "expand_merge", "merge_components",
    "is_linear", "linearize", "is_ts_basic", "to_ts_basic",
]
