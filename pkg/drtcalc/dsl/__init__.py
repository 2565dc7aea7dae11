from .model import CheckDirective, Model
from .parser import RELATION_NAMES, parse, parse_file, parse_term
from .printer import print_model, print_term

__all__ = [
    "CheckDirective", "Model", "RELATION_NAMES", "parse", "parse_file", "parse_term",
    "print_model", "print_term",
]
