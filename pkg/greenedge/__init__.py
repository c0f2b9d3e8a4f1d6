"""
GreenEdge - Edge-Cloud Workload Allocation and Energy Dispatch Optimizer
========================================================================

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers

LEGAL NOTICE:
This software is proprietary and confidential. Unauthorized copying,
distribution, modification, or use is strictly prohibited without
explicit written permission from the copyright holder. This software
is provided "as is" without warranty of any kind, either expressed or implied.

========================================================================

A library for planning how an edge service provider serves demand across
its edge clouds while buying, storing, generating and selling energy:
- Seeded scenario generation and YAML scenario documents
- MILP model of allocation, server counts, grid, battery and renewables
- Bounded-variable simplex and branch and bound, MPS export
- Sensitivity sweeps and variant comparisons with CSV output

Usage:
    from greenedge import generate_scenario, build_model, solve_milp, cost_report

    scenario = generate_scenario()
    solution, stats = solve_milp(build_model(scenario, "M0"))
    print(cost_report(scenario, solution).total)
"""

__version__ = "1.0.1"
__author__ = "GreenEdge Developers"

from .core import (
    GenSpec,
    ScaleFactors,
    Scenario,
    ScenarioError,
    ScenarioValidationError,
    generate_scenario,
    load_scenario,
    save_scenario,
    scale_scenario,
)
from .model import (
    M0,
    M1,
    M2,
    M3,
    CostReport,
    MilpModel,
    ModelOptions,
    Solution,
    SolutionStatus,
    Variant,
    build_model,
    cost_report,
    validate_solution,
)
from .solver import BnbConfig, SolveStats, round_fix_heuristic, solve_lp, solve_milp, write_mps
from .analysis import SweepSpec, SweepTable, compare_variants, run_sweep, write_csv

__all__ = [
    # Version info
    "__version__",
    "__author__",
    # Scenario
    "GenSpec",
    "ScaleFactors",
    "Scenario",
    "ScenarioError",
    "ScenarioValidationError",
    "generate_scenario",
    "load_scenario",
    "save_scenario",
    "scale_scenario",
    # Model
    "M0",
    "M1",
    "M2",
    "M3",
    "CostReport",
    "MilpModel",
    "ModelOptions",
    "Solution",
    "SolutionStatus",
    "Variant",
    "build_model",
    "cost_report",
    "validate_solution",
    # Solver
    "BnbConfig",
    "SolveStats",
    "round_fix_heuristic",
    "solve_lp",
    "solve_milp",
    "write_mps",
    # Analysis
    "SweepSpec",
    "SweepTable",
    "compare_variants",
    "run_sweep",
    "write_csv",
]
