"""
Scenario Document - Load and save scenarios as YAML documents.

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers

A scenario document is a UTF-8 YAML mapping whose fields mirror the
Scenario dataclass. Matrices are nested lists: demand is row = area,
column = period; delay is row = area, column = EC.
"""

from pathlib import Path
from typing import Any, Dict, Union

from ..utils.file_utils import load_yaml, save_yaml
from .scenario import Scenario
from .validator import ScenarioParseError, ScenarioValidator

SCENARIO_HEADER = """\
greenedge scenario document
units:
  period_length_hours  hours per period (dT)
  demand[area][period] resource units per period (lambda)
  resource_per_request resource units per request (alpha)
  service_rate         requests per server per period (rho)
  unmet_penalty[area]  money per unmet request (phi)
  delay[area][ec]      one-way propagation delay, ms (d)
  max_delay            round-trip delay threshold, ms (D_max)
  max_utilization      utilization threshold in (0,1] (gamma_max)
  sellback_ratio       sell-back price / purchase price (zeta)
  charge_efficiency    battery efficiency in (0,1] (eta)
  ecs[j].p_idle/p_peak kW per server; pue dimensionless >= 1
  ecs[j].price[t]      money per kWh; grid_cap[t], renewable[t] kW
  ecs[j].batt_*        kWh; charge_max/discharge_max kW
  ecs[j].emission_factor tons CO2 per MWh; carbon_tax money per ton CO2
"""

_NUMBER = {"type": "number"}
_VECTOR = {"type": "array", "items": _NUMBER}
_MATRIX = {"type": "array", "items": _VECTOR}

_EC_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "required": [
        "max_servers", "p_idle", "p_peak", "pue", "price", "grid_cap", "renewable",
        "batt_cap_max", "batt_cap_min", "batt_init", "charge_max", "discharge_max",
        "emission_factor", "carbon_tax",
    ],
    "properties": {
        "max_servers": {"type": "integer", "minimum": 0},
        "p_idle": _NUMBER,
        "p_peak": _NUMBER,
        "pue": _NUMBER,
        "price": _VECTOR,
        "grid_cap": _VECTOR,
        "renewable": _VECTOR,
        "batt_cap_max": _NUMBER,
        "batt_cap_min": _NUMBER,
        "batt_init": _NUMBER,
        "charge_max": _NUMBER,
        "discharge_max": _NUMBER,
        "emission_factor": _NUMBER,
        "carbon_tax": _NUMBER,
    },
    "additionalProperties": False,
}

SCENARIO_DOCUMENT_SCHEMA: Dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "Scenario",
    "type": "object",
    "required": [
        "num_areas", "num_ecs", "num_periods", "period_length_hours",
        "resource_per_request", "service_rate", "max_delay", "max_utilization",
        "sellback_ratio", "charge_efficiency", "unmet_penalty", "demand", "delay", "ecs",
    ],
    "properties": {
        "num_areas": {"type": "integer", "minimum": 1},
        "num_ecs": {"type": "integer", "minimum": 1},
        "num_periods": {"type": "integer", "minimum": 1},
        "period_length_hours": _NUMBER,
        "resource_per_request": _NUMBER,
        "service_rate": _NUMBER,
        "max_delay": _NUMBER,
        "max_utilization": _NUMBER,
        "sellback_ratio": _NUMBER,
        "charge_efficiency": _NUMBER,
        "unmet_penalty": _VECTOR,
        "demand": _MATRIX,
        "delay": _MATRIX,
        "ecs": {"type": "array", "items": _EC_SCHEMA},
    },
    "additionalProperties": False,
}


def scenario_from_document(document: Any) -> Scenario:
    """
    Build a validated Scenario from a parsed document.

    Args:
        document: Parsed YAML content

    Returns:
        Scenario passing every invariant

    Raises:
        ScenarioValidationError: On the first structural or invariant violation
    """
    validator = ScenarioValidator()
    validator.validate_document(document).raise_first()
    scenario = Scenario.from_dict(document)
    validator.validate(scenario).raise_first()
    return scenario


def load_scenario(path: Union[str, Path]) -> Scenario:
    """
    Load a scenario document.

    Args:
        path: Path to the YAML scenario document

    Returns:
        Scenario passing every invariant

    Raises:
        FileNotFoundError: If the file doesn't exist
        ScenarioParseError: If the document is malformed
        ScenarioValidationError: If an invariant is violated
    """
    try:
        document = load_yaml(path)
    except ValueError as e:
        raise ScenarioParseError(f"malformed scenario document {path}: {e}") from e
    return scenario_from_document(document)


def save_scenario(scenario: Scenario, path: Union[str, Path]) -> None:
    """
    Save a scenario as a YAML document with a units header.

    Args:
        scenario: The scenario to write
        path: Output file path
    """
    save_yaml(scenario.to_dict(), path, header=SCENARIO_HEADER)


def dump_scenario(scenario: Scenario) -> str:
    """Render a scenario document as text."""
    from ..utils.file_utils import dump_yaml

    return dump_yaml(scenario.to_dict(), header=SCENARIO_HEADER)
