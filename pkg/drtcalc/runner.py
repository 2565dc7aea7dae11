import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

from .conf import DEFAULT_MAX_STATES
from .dsl.model import CheckDirective, Model
from .dsl.printer import print_term
from .equiv import Verdict, decide
from .statespace import explore_many

logger = logging.getLogger(__name__)


@dataclass
class CheckResult:
    directive: CheckDirective
    verdict: Verdict

    @property
    def passed(self) -> bool:
        """Matches `expect` when given; otherwise the check claims equivalence."""
        if self.directive.expect is not None:
            return self.verdict.answer == self.directive.expect
        return self.verdict.holds

    def to_dict(self, specs=None) -> Dict[str, Any]:
        return {
            "line": self.directive.line,
            "relation": self.directive.relation,
            "lhs": print_term(self.directive.lhs, specs),
            "rhs": print_term(self.directive.rhs, specs),
            "expect": self.directive.expect,
            "passed": self.passed,
            "verdict": self.verdict.to_dict(),
        }


class CheckRunner:
    """
    Evaluates the check directives of a model, in file order.

    Example:
        runner = CheckRunner(parse_file("models/coarsening.drt"))
        results = runner.run()
        ok = runner.all_passed(results)
    """

    def __init__(self, model: Model, max_states: int = DEFAULT_MAX_STATES):
        self.model = model
        self.max_states = max_states

    def check(self, directive: CheckDirective) -> CheckResult:
        l = explore_many([directive.lhs, directive.rhs], self.model.table, self.max_states)
        verdict = decide(directive.relation, l, *l.roots)
        result = CheckResult(directive, verdict)
        status = "ok" if result.passed else "FAILED"
        logger.info(f"line {directive.line}: {directive.relation} -> {verdict.answer} [{status}]")
        return result

    def run(self, relation: Optional[str] = None) -> List[CheckResult]:
        """All directives, or only those of one relation."""
        return [self.check(d) for d in self.model.checks if relation is None or d.relation == relation]

    @staticmethod
    def all_passed(results: List[CheckResult]) -> bool:
        return all(r.passed for r in results)
