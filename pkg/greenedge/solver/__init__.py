"""
GreenEdge Solver - Bounded simplex, branch and bound, MPS export.

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers
"""

from .lp import (
    BoundedSimplex,
    LpBasis,
    LpProblem,
    LpResult,
    LpStatus,
    SimplexSettings,
    SingularBasisError,
    SolverError,
    VarStatus,
    factor_basis,
    primal_residual,
    solve_lp,
)
from .bnb import BnbConfig, BranchAndBound, SolveStats, round_fix_heuristic, solve_milp
from .mps import MpsWriteError, mps_text, write_mps

__all__ = [
    "BoundedSimplex",
    "LpBasis",
    "LpProblem",
    "LpResult",
    "LpStatus",
    "SimplexSettings",
    "SingularBasisError",
    "SolverError",
    "VarStatus",
    "factor_basis",
    "primal_residual",
    "solve_lp",
    "BnbConfig",
    "BranchAndBound",
    "SolveStats",
    "round_fix_heuristic",
    "solve_milp",
    "MpsWriteError",
    "mps_text",
    "write_mps",
]
