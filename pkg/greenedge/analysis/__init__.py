"""
GreenEdge Analysis - Sweeps, variant comparisons and CSV output.

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers
"""

from .sweep import (
    DIMENSION_PARAMS,
    SCALE_PARAMS,
    SWEEP_PARAMS,
    SolveOutcome,
    SweepError,
    SweepRow,
    SweepSpec,
    SweepTable,
    compare_variants,
    run_sweep,
    scenario_for_point,
    solve_scenario,
)
from .csv_writer import CSV_COLUMNS, CsvWriteError, format_csv, read_csv, write_csv, write_manifest
from .suites import SUITES, ExperimentSuite, get_suite, suite_names

__all__ = [
    "DIMENSION_PARAMS",
    "SCALE_PARAMS",
    "SWEEP_PARAMS",
    "SolveOutcome",
    "SweepError",
    "SweepRow",
    "SweepSpec",
    "SweepTable",
    "compare_variants",
    "run_sweep",
    "scenario_for_point",
    "solve_scenario",
    "CSV_COLUMNS",
    "CsvWriteError",
    "format_csv",
    "read_csv",
    "write_csv",
    "write_manifest",
    "SUITES",
    "ExperimentSuite",
    "get_suite",
    "suite_names",
]
