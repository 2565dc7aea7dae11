from .axioms import AXIOMS, Axiom, axiom_ids, get_axiom
from .generator import GenOptions, TermGenerator, gen_closed_term, harness_table
from .meta import META_PROPERTIES, check_meta_properties, check_meta_property
from .soundness import check_axiom_soundness, run_axiom_suite
from .tally import Tally

__all__ = [
    "AXIOMS", "Axiom", "axiom_ids", "get_axiom", "GenOptions", "TermGenerator", "gen_closed_term",
    "harness_table", "META_PROPERTIES", "check_meta_properties", "check_meta_property",
    "check_axiom_soundness", "run_axiom_suite", "Tally",
]
