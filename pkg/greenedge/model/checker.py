"""

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers

LEGAL NOTICE:
This software is proprietary and confidential. Unauthorized copying,
distribution, modification, or use is strictly prohibited without
explicit written permission from the copyright holder.

Solution Checker - Re-checks a solution against every constraint family.

The checker rebuilds the model for the scenario and variant, then measures
the largest violation per family: bound violations count toward the
family of the variable, row violations toward the family of the row, and
family (l) holds the relative mismatch between the stored objective and
the objective recomputed from the values. It reports and never raises.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Union

import numpy as np

from ..core.scenario import Scenario
from ..core.validator import ValidationIssue, ValidationResult, ValidationSeverity
from .builder import ModelOptions, Variant, build_model, var_name
from .milp import ConstraintFamily, Solution

logger = logging.getLogger(__name__)


@dataclass
class ResidualReport:
    """Maximum residual per constraint family and the verdict at a tolerance."""
    tolerance: float
    residuals: Dict[ConstraintFamily, float] = field(default_factory=dict)
    worst: Dict[ConstraintFamily, str] = field(default_factory=dict)
    integrality_violations: List[str] = field(default_factory=list)
    missing: List[str] = field(default_factory=list)
    issues: ValidationResult = field(default_factory=ValidationResult)

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    @property
    def passed(self) -> bool:
        return (not self.missing
                and not self.integrality_violations
                and all(r <= self.tolerance for r in self.residuals.values()))

    def residual(self, family: Union[ConstraintFamily, str]) -> float:
        if isinstance(family, str):
            family = ConstraintFamily(family)
        return self.residuals.get(family, 0.0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "tolerance": self.tolerance,
            "residuals": {f.value: self.residuals.get(f, 0.0) for f in ConstraintFamily},
            "worst": {f.value: name for f, name in self.worst.items()},
            "integrality_violations": list(self.integrality_violations),
            "missing": list(self.missing),
            "issues": self.issues.to_dict()["issues"],
        }


def _record(report: ResidualReport, family: ConstraintFamily, amount: float, name: str) -> None:
    if amount > report.residuals.get(family, 0.0):
        report.residuals[family] = amount
        report.worst[family] = name


def validate_solution(
    s: Scenario,
    v: Union[Variant, str],
    sol: Solution,
    tol: float = 1e-6,
    options: Optional[ModelOptions] = None,
) -> ResidualReport:
    """
    Check a solution against every constraint family of the model.

    Args:
        s: Scenario the solution belongs to
        v: Variant the solution was computed for
        sol: Solution with a value for every variable
        tol: Residual bound for the pass/fail verdict
        options: Modelling conventions used when solving

    Returns:
        ResidualReport with per-family maxima, integrality violations and
        warnings (simultaneous charge and discharge)
    """
    report = ResidualReport(tolerance=tol)
    report.residuals = {f: 0.0 for f in ConstraintFamily}
    model = build_model(s, Variant.parse(v), options)

    values = np.zeros(model.num_variables)
    for var in model.variables:
        value = sol.get(var.name)
        if value is None or not math.isfinite(value):
            report.missing.append(var.name)
            report.issues.add_issue(ValidationIssue(
                path=var.name, message="no value for variable", rule="missing",
            ))
        else:
            values[var.index] = value
    if report.missing:
        logger.warning("solution lacks %d of %d variables", len(report.missing), model.num_variables)
        return report

    for var in model.variables:
        x = values[var.index]
        excess = max(var.lower - x, x - var.upper, 0.0)
        _record(report, var.family, excess, var.name)
        if var.integer:
            gap = abs(x - round(x))
            if gap > tol:
                report.integrality_violations.append(var.name)
                report.issues.add_issue(ValidationIssue(
                    path=var.name, message=f"integrality violated ({x})", value=x,
                    rule="integrality",
                ))

    for row in model.rows:
        _record(report, row.family, row.residual(values), row.name)

    recomputed = model.objective_value(values)
    if math.isnan(sol.objective):
        mismatch = 0.0
    else:
        mismatch = abs(sol.objective - recomputed) / max(1.0, abs(recomputed))
    _record(report, ConstraintFamily.OBJECTIVE, mismatch, "objective")

    for family, amount in report.residuals.items():
        if amount > tol:
            report.issues.add_issue(ValidationIssue(
                path=report.worst.get(family, family.value),
                message=f"family {family.label} residual {amount:.3e} exceeds {tol:.1e}",
                value=amount, rule="residual",
            ))

    for j in range(s.num_ecs):
        for t in range(s.num_periods):
            pc = values[model.index_of(var_name("PC", j, t))]
            pd = values[model.index_of(var_name("PD", j, t))]
            if min(pc, pd) > tol:
                report.issues.add_issue(ValidationIssue(
                    path=var_name("PC", j, t),
                    message=f"simultaneous charge {pc:.6g} and discharge {pd:.6g}",
                    severity=ValidationSeverity.WARNING,
                    rule="simultaneous_charge",
                ))
    return report
