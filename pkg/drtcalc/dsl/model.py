from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from ..errors import ModelError
from ..terms import ActionTable, Rec, RecSpec, Term


@dataclass
class CheckDirective:
    """`check <relation> lhs ~ rhs [expect yes|no];`"""
    relation: str
    lhs: Term
    rhs: Term
    expect: Optional[str] = None
    line: Optional[int] = None

    def describe(self) -> str:
        return f"{self.relation}: {self.lhs} ~ {self.rhs}"


@dataclass
class Model:
    """
    A parsed model file, or a model built in code.

    Attributes:
        table: Actions and communication function.
        specs: Named recursive specifications.
        procs: Named closed terms.
        checks: Check directives in file order.
    """
    table: ActionTable
    specs: Dict[str, RecSpec] = field(default_factory=dict)
    procs: Dict[str, Term] = field(default_factory=dict)
    checks: List[CheckDirective] = field(default_factory=list)

    def proc(self, name: str) -> Term:
        if name not in self.procs:
            raise ModelError(f"unknown proc {name}; defined: {', '.join(sorted(self.procs)) or 'none'}")
        return self.procs[name]

    def constant(self, spec: str, var: str) -> Rec:
        """The recursion constant ⟨var | specs[spec]⟩."""
        if spec not in self.specs:
            raise ModelError(f"unknown spec {spec}")
        if var not in self.specs[spec].variables:
            raise ModelError(f"{var} is not a variable of spec {spec}")
        return Rec(var, self.specs[spec])

    def summary(self) -> Dict[str, Any]:
        return {
            "actions": len(self.table.actions),
            "communications": len(self.table.comm),
            "handshaking": self.table.handshaking,
            "specs": {name: len(spec.equations) for name, spec in self.specs.items()},
            "procs": sorted(self.procs),
            "checks": len(self.checks),
        }
