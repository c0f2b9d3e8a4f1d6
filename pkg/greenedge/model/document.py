"""
Solution Document - Load and save solved dispatches as YAML documents.

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Union

from ..utils.file_utils import dump_yaml, load_yaml, save_text
from .builder import M0, ModelOptions, Variant
from .costs import CostReport
from .milp import Solution, SolutionError

SOLUTION_HEADER = """\
greenedge solution document
variables: x[i][j][t] requests, q[i][t] unmet requests, c[j][t] servers,
  PG/PC/PD/PS/PU/PW[j][t] kW, E[j][t] kWh (t = 1..T+1); indices are 1-based
objective and costs in the scenario's money unit
"""


@dataclass
class SolutionDocument:
    """A solution together with what is needed to re-check it."""
    solution: Solution
    variant: Variant = M0
    options: ModelOptions = field(default_factory=ModelOptions)
    costs: Optional[CostReport] = None
    stats: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        data = self.solution.to_dict()
        values = data.pop("values")
        document: Dict[str, Any] = {
            "variant": self.variant.name,
            "options": self.options.to_dict(),
        }
        document.update(data)
        if self.costs is not None:
            document["costs"] = self.costs.to_dict()
        if self.stats:
            document["stats"] = dict(self.stats)
        document["values"] = values
        return document

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SolutionDocument":
        costs = data.get("costs")
        return cls(
            solution=Solution.from_dict(data),
            variant=Variant.parse(data.get("variant", "M0")),
            options=ModelOptions.from_dict(data.get("options")),
            costs=CostReport.from_dict(costs) if costs else None,
            stats=dict(data.get("stats") or {}),
        )


def dump_solution(document: SolutionDocument) -> str:
    """Render a solution document as text."""
    return dump_yaml(document.to_dict(), header=SOLUTION_HEADER, flow_style=False)


def save_solution(document: SolutionDocument, path: Union[str, Path]) -> None:
    """Save a solution document."""
    save_text(dump_solution(document), path)


def load_solution(path: Union[str, Path]) -> SolutionDocument:
    """
    Load a solution document.

    Raises:
        FileNotFoundError: If the file doesn't exist
        SolutionError: If the document is malformed
    """
    try:
        data = load_yaml(path)
    except ValueError as e:
        raise SolutionError(f"malformed solution document {path}: {e}") from e
    if not isinstance(data, dict) or "status" not in data:
        raise SolutionError(f"malformed solution document {path}: missing status")
    try:
        return SolutionDocument.from_dict(data)
    except (KeyError, TypeError, ValueError) as e:
        raise SolutionError(f"malformed solution document {path}: {e}") from e
