"""
GreenEdge Core - Scenario data model, validation, documents and generation.

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers
"""

from .validator import (
    ScenarioError,
    ScenarioParseError,
    ScenarioValidationError,
    ScenarioValidator,
    ValidationIssue,
    ValidationResult,
    ValidationSeverity,
)
from .scenario import (
    EdgeCloudParams,
    Scenario,
    ScaleFactors,
    ScaleFactorError,
    eligibility,
    scale_scenario,
    scenario_summary,
)
from .generator import GenSpec, GenSpecError, ScenarioGenerator, generate_scenario
from .document import dump_scenario, load_scenario, save_scenario, scenario_from_document

__all__ = [
    "ScenarioError",
    "ScenarioParseError",
    "ScenarioValidationError",
    "ScenarioValidator",
    "ValidationIssue",
    "ValidationResult",
    "ValidationSeverity",
    "EdgeCloudParams",
    "Scenario",
    "ScaleFactors",
    "ScaleFactorError",
    "eligibility",
    "scale_scenario",
    "scenario_summary",
    "GenSpec",
    "GenSpecError",
    "ScenarioGenerator",
    "generate_scenario",
    "dump_scenario",
    "load_scenario",
    "save_scenario",
    "scenario_from_document",
]
