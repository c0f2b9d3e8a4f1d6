"""

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers

LEGAL NOTICE:
This software is proprietary and confidential. Unauthorized copying,
distribution, modification, or use is strictly prohibited without
explicit written permission from the copyright holder.

Scenario Validator - Checks scenario documents and scenario invariants.

Provides:
- Structural validation of scenario documents (JSON Schema)
- Invariant validation of Scenario objects
- Detailed, path-addressed issue reporting
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Sequence

try:
    from jsonschema import Draft7Validator
    HAS_JSONSCHEMA = True
except ImportError:
    HAS_JSONSCHEMA = False


class ScenarioError(Exception):
    """Base exception for scenario problems."""

    def __init__(self, message: str):
        self.message = message
        super().__init__(message)


class ScenarioParseError(ScenarioError):
    """Raised when a scenario document cannot be parsed."""


class ScenarioValidationError(ScenarioError):
    """Raised when a scenario violates an invariant."""

    def __init__(self, message: str, path: str = "$", rule: Optional[str] = None):
        self.path = path
        self.rule = rule
        super().__init__(f"{path}: {message}")


class ValidationSeverity(Enum):
    """Severity level for validation issues."""
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"


@dataclass
class ValidationIssue:
    """Represents a single validation issue."""
    path: str
    message: str
    severity: ValidationSeverity = ValidationSeverity.ERROR
    value: Any = None
    rule: Optional[str] = None


@dataclass
class ValidationResult:
    """Result of a validation operation."""
    is_valid: bool = True
    issues: List[ValidationIssue] = field(default_factory=list)

    @property
    def errors(self) -> List[ValidationIssue]:
        """Get only error-level issues."""
        return [i for i in self.issues if i.severity == ValidationSeverity.ERROR]

    @property
    def warnings(self) -> List[ValidationIssue]:
        """Get only warning-level issues."""
        return [i for i in self.issues if i.severity == ValidationSeverity.WARNING]

    def add_issue(self, issue: ValidationIssue) -> None:
        """Add an issue to the result."""
        self.issues.append(issue)
        if issue.severity == ValidationSeverity.ERROR:
            self.is_valid = False

    def merge(self, other: "ValidationResult") -> None:
        """Merge another validation result into this one."""
        self.issues.extend(other.issues)
        if not other.is_valid:
            self.is_valid = False

    def raise_first(self) -> None:
        """Raise ScenarioValidationError for the first error, if any."""
        errors = self.errors
        if errors:
            first = errors[0]
            raise ScenarioValidationError(first.message, path=first.path, rule=first.rule)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary representation."""
        return {
            "is_valid": self.is_valid,
            "error_count": len(self.errors),
            "warning_count": len(self.warnings),
            "issues": [
                {
                    "path": i.path,
                    "message": i.message,
                    "severity": i.severity.value,
                    "rule": i.rule,
                }
                for i in self.issues
            ],
        }


EC_SCALARS = (
    "max_servers", "p_idle", "p_peak", "pue", "batt_cap_max", "batt_cap_min", "batt_init",
    "charge_max", "discharge_max", "emission_factor", "carbon_tax",
)


class ScenarioValidator:
    """
    Validates scenario documents and Scenario objects.

    Document validation checks structure and types against the scenario
    document schema. Scenario validation checks every domain invariant
    (value ranges, vector lengths, battery ordering) and reports each
    violation with the location it was found at.
    """

    def __init__(self, tolerance: float = 0.0):
        """
        Initialize the validator.

        Args:
            tolerance: Slack allowed on ordering checks such as p_idle <= p_peak
        """
        self.tolerance = tolerance

    def validate_document(self, document: Any) -> ValidationResult:
        """
        Validate a parsed scenario document against the document schema.

        Args:
            document: The parsed document (normally a dict)

        Returns:
            ValidationResult with any structural issues found
        """
        from .document import SCENARIO_DOCUMENT_SCHEMA

        result = ValidationResult()
        if not isinstance(document, dict):
            result.add_issue(ValidationIssue(
                path="$",
                message="scenario document must be a mapping",
                rule="document_type",
            ))
            return result

        if HAS_JSONSCHEMA:
            validator = Draft7Validator(SCENARIO_DOCUMENT_SCHEMA)
            errors = sorted(validator.iter_errors(document), key=lambda e: list(e.absolute_path))
            for error in errors:
                result.add_issue(ValidationIssue(
                    path=self._format_path(error.absolute_path),
                    message=error.message,
                    value=error.instance,
                    rule=error.validator,
                ))
        else:
            for key in SCENARIO_DOCUMENT_SCHEMA["required"]:
                if key not in document:
                    result.add_issue(ValidationIssue(
                        path=f"$.{key}",
                        message="required field is missing",
                        rule="required",
                    ))
        return result

    def validate(self, scenario: Any) -> ValidationResult:
        """
        Validate every invariant of a Scenario.

        Args:
            scenario: The Scenario to check

        Returns:
            ValidationResult listing each violated invariant in document order
        """
        result = ValidationResult()
        s = scenario
        tol = self.tolerance

        for name in ("period_length_hours", "resource_per_request", "service_rate", "max_delay",
                     "max_utilization", "sellback_ratio", "charge_efficiency"):
            self._check_finite(result, f"$.{name}", getattr(s, name), name)
        for name in ("num_areas", "num_ecs", "num_periods"):
            if getattr(s, name) < 1:
                self._error(result, f"$.{name}", f"{name} >= 1 violated", "dimension")
        if not s.period_length_hours > 0:
            self._error(result, "$.period_length_hours", "period_length_hours > 0 violated", "positive")
        if not s.resource_per_request > 0:
            self._error(result, "$.resource_per_request", "alpha > 0 violated", "positive")
        if not s.service_rate > 0:
            self._error(result, "$.service_rate", "rho > 0 violated", "positive")
        if not 0.0 < s.max_utilization <= 1.0:
            self._error(result, "$.max_utilization", "gamma_max in (0,1] violated", "range")
        if not 0.0 <= s.sellback_ratio <= 1.0:
            self._error(result, "$.sellback_ratio", "zeta in [0,1] violated", "range")
        if not 0.0 < s.charge_efficiency <= 1.0:
            self._error(result, "$.charge_efficiency", "eta in (0,1] violated", "range")
        if not s.max_delay >= 0:
            self._error(result, "$.max_delay", "max_delay >= 0 violated", "nonnegative")

        self._check_matrix(result, "$.demand", s.demand, s.num_areas, s.num_periods, "demand")
        self._check_matrix(result, "$.delay", s.delay, s.num_areas, s.num_ecs, "delay")
        if len(s.unmet_penalty) != s.num_areas:
            self._error(result, "$.unmet_penalty",
                        f"expected {s.num_areas} entries, found {len(s.unmet_penalty)}", "shape")
        else:
            self._check_nonnegative(result, "$.unmet_penalty", s.unmet_penalty, "unmet_penalty")

        if len(s.ecs) != s.num_ecs:
            self._error(result, "$.ecs", f"expected {s.num_ecs} entries, found {len(s.ecs)}", "shape")
        for j, ec in enumerate(s.ecs):
            self._check_ec(result, f"$.ecs[{j}]", ec, s.num_periods, tol)
        return result

    def _check_ec(self, result: ValidationResult, path: str, ec: Any, periods: int, tol: float) -> None:
        """Check the invariants of one EdgeCloudParams."""
        for name in EC_SCALARS:
            self._check_finite(result, f"{path}.{name}", getattr(ec, name), name)
        if ec.max_servers < 0:
            self._error(result, f"{path}.max_servers", "max_servers >= 0 violated", "nonnegative")
        if ec.p_idle < 0:
            self._error(result, f"{path}.p_idle", "p_idle >= 0 violated", "nonnegative")
        if ec.p_idle > ec.p_peak + tol:
            self._error(result, f"{path}.p_idle", "p_idle ≤ p_peak violated", "ordering")
        if ec.pue < 1.0:
            self._error(result, f"{path}.pue", "pue >= 1 violated", "range")
        if ec.batt_cap_min < 0:
            self._error(result, f"{path}.batt_cap_min", "batt_cap_min >= 0 violated", "nonnegative")
        if ec.batt_cap_min > ec.batt_init + tol:
            self._error(result, f"{path}.batt_init", "batt_cap_min ≤ batt_init violated", "ordering")
        if ec.batt_init > ec.batt_cap_max + tol:
            self._error(result, f"{path}.batt_init", "batt_init ≤ batt_cap_max violated", "ordering")
        for name in ("charge_max", "discharge_max", "emission_factor", "carbon_tax"):
            if getattr(ec, name) < 0:
                self._error(result, f"{path}.{name}", f"{name} >= 0 violated", "nonnegative")
        for name in ("price", "grid_cap", "renewable"):
            vector = getattr(ec, name)
            if len(vector) != periods:
                self._error(result, f"{path}.{name}",
                            f"expected {periods} entries, found {len(vector)}", "shape")
            else:
                self._check_nonnegative(result, f"{path}.{name}", vector, name)

    def _check_matrix(
        self,
        result: ValidationResult,
        path: str,
        rows: Sequence[Sequence[float]],
        num_rows: int,
        num_cols: int,
        name: str,
    ) -> None:
        """Check a row-major matrix for shape and nonnegativity."""
        if len(rows) != num_rows:
            self._error(result, path, f"expected {num_rows} rows, found {len(rows)}", "shape")
            return
        for r, row in enumerate(rows):
            if len(row) != num_cols:
                self._error(result, f"{path}[{r}]",
                            f"expected {num_cols} columns, found {len(row)}", "shape")
                continue
            self._check_nonnegative(result, f"{path}[{r}]", row, name)

    def _check_finite(self, result: ValidationResult, path: str, value: Any, name: str) -> None:
        if not math.isfinite(value):
            self._error(result, path, f"{name} must be finite", "finite", value)

    def _check_nonnegative(
        self, result: ValidationResult, path: str, values: Iterable[float], name: str
    ) -> None:
        for k, value in enumerate(values):
            if not math.isfinite(value) or value < 0:
                self._error(result, f"{path}[{k}]", f"{name} >= 0 violated", "nonnegative", value)
                return

    @staticmethod
    def _error(
        result: ValidationResult, path: str, message: str, rule: str, value: Any = None
    ) -> None:
        result.add_issue(ValidationIssue(path=path, message=message, rule=rule, value=value))

    @staticmethod
    def _format_path(path: Iterable[Any]) -> str:
        """Format a JSON path for display."""
        parts = ["$"]
        for part in path:
            if isinstance(part, int):
                parts.append(f"[{part}]")
            else:
                parts.append(f".{part}")
        return "".join(parts)
