"""
GreenEdge Model - MILP assembly, closed-form formulas, costs and checks.

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers
"""

from .milp import (
    ConstraintFamily,
    ConstraintRow,
    DimensionMismatchError,
    MilpModel,
    ModelError,
    RowSense,
    Solution,
    SolutionError,
    SolutionStatus,
    Variable,
    solution_from_values,
)
from .formulas import battery_step, power_demand, utilization
from .builder import M0, M1, M2, M3, VARIANTS, ModelBuilder, ModelOptions, Variant, build_model, var_name
from .costs import CostReport, cost_report, summarize_costs
from .checker import ResidualReport, validate_solution
from .document import SolutionDocument, dump_solution, load_solution, save_solution

__all__ = [
    "ConstraintFamily",
    "ConstraintRow",
    "DimensionMismatchError",
    "MilpModel",
    "ModelError",
    "RowSense",
    "Solution",
    "SolutionError",
    "SolutionStatus",
    "Variable",
    "solution_from_values",
    "battery_step",
    "power_demand",
    "utilization",
    "M0",
    "M1",
    "M2",
    "M3",
    "VARIANTS",
    "ModelBuilder",
    "ModelOptions",
    "Variant",
    "build_model",
    "var_name",
    "CostReport",
    "cost_report",
    "summarize_costs",
    "ResidualReport",
    "validate_solution",
    "SolutionDocument",
    "dump_solution",
    "load_solution",
    "save_solution",
]
