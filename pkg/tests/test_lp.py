"""
GreenEdge - Bounded Simplex Tests

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers
"""

import math

import numpy as np
import pytest
from scipy.optimize import linprog

from greenedge.solver import (
    LpProblem,
    LpStatus,
    SimplexSettings,
    SolverError,
    primal_residual,
    solve_lp,
)


def test_lower_row_bound_is_attained():
    p = LpProblem.from_dense([[1.0], [1.0]], ["G", "L"], [3.0, 10.0], [1.0])
    result = solve_lp(p)
    assert result.status == LpStatus.OPTIMAL
    assert result.objective == pytest.approx(3.0)
    assert result.x[0] == pytest.approx(3.0)


def test_upper_variable_bound_is_attained():
    p = LpProblem.from_dense([[1.0]], ["L"], [100.0], [-1.0], upper=[5.0])
    result = solve_lp(p)
    assert result.is_optimal
    assert result.objective == pytest.approx(-5.0)


def test_bounds_only_problem():
    p = LpProblem.from_dense(np.zeros((0, 2)), [], [], [-1.0, 2.0], upper=[5.0, 3.0])
    result = solve_lp(p)
    assert result.is_optimal
    assert result.x.tolist() == [5.0, 0.0]


def test_infeasible_rows():
    p = LpProblem.from_dense([[1.0], [1.0]], ["G", "L"], [1.0, 0.0], [1.0])
    result = solve_lp(p)
    assert result.status == LpStatus.INFEASIBLE
    assert result.infeasibility > 0


def test_infeasible_against_variable_bound():
    p = LpProblem.from_dense([[1.0]], ["G"], [1.0], [0.0], upper=[0.0])
    assert solve_lp(p).status == LpStatus.INFEASIBLE


def test_unbounded_reports_an_improving_ray():
    p = LpProblem.from_dense([[1.0, -1.0]], ["L"], [1.0], [-1.0, -1.0])
    result = solve_lp(p)
    assert result.status == LpStatus.UNBOUNDED
    ray = result.ray
    assert ray is not None
    assert float(p.objective @ ray) < 0
    assert np.all(ray >= -1e-12)
    assert float((p.matrix @ ray)[0]) <= 1e-9


def test_optimal_solution_certificate():
    p = LpProblem.from_dense(
        [[1.0, 2.0], [3.0, 1.0]], ["L", "L"], [4.0, 6.0], [-1.0, -1.0]
    )
    result = solve_lp(p)
    assert result.objective == pytest.approx(-2.8)
    assert result.x == pytest.approx([1.6, 1.2])
    assert result.primal_residual <= 1e-9
    assert result.dual_infeasibility <= 1e-7
    assert primal_residual(p, result.x) == pytest.approx(result.primal_residual)


def test_iteration_limit():
    p = LpProblem.from_dense(
        [[1.0, 2.0], [3.0, 1.0]], ["L", "L"], [4.0, 6.0], [-1.0, -1.0]
    )
    result = solve_lp(p, SimplexSettings(iteration_limit=1))
    assert result.status == LpStatus.ITERATION_LIMIT


def test_warm_start_from_optimal_basis_needs_no_pivots():
    p = LpProblem.from_dense(
        [[1.0, 2.0], [3.0, 1.0]], ["L", "L"], [4.0, 6.0], [-1.0, -1.0]
    )
    first = solve_lp(p)
    again = solve_lp(p, basis=first.basis)
    assert again.is_optimal
    assert again.iterations == 0
    assert again.objective == pytest.approx(first.objective)


def test_warm_start_after_bound_change():
    p = LpProblem.from_dense(
        [[1.0, 2.0], [3.0, 1.0]], ["L", "L"], [4.0, 6.0], [-1.0, -1.0]
    )
    parent = solve_lp(p)
    child = p.with_bounds(p.lower, np.array([1.0, math.inf]))
    warm = solve_lp(child, basis=parent.basis)
    cold = solve_lp(child)
    assert warm.is_optimal and cold.is_optimal
    assert warm.objective == pytest.approx(cold.objective)
    assert warm.objective == pytest.approx(-2.5)


def test_degenerate_cycling_example():
    # classic instance that cycles under the textbook pivot rule
    A = [
        [0.25, -8.0, -1.0, 9.0],
        [0.5, -12.0, -0.5, 3.0],
        [0.0, 0.0, 1.0, 0.0],
    ]
    c = [-0.75, 20.0, -0.5, 6.0]
    p = LpProblem.from_dense(A, ["L", "L", "L"], [0.0, 0.0, 1.0], c)
    result = solve_lp(p, SimplexSettings(stall_threshold=2))
    assert result.is_optimal
    assert result.objective == pytest.approx(-1.25)
    ref = linprog(c, A_ub=A, b_ub=[0.0, 0.0, 1.0], method="highs")
    assert result.objective == pytest.approx(ref.fun)


@pytest.mark.parametrize("seed", range(6))
def test_matches_scipy_on_random_problems(seed):
    rng = np.random.default_rng(seed)
    m_ub, m_eq, n = 4, 2, 7
    A_ub = rng.uniform(0.0, 2.0, size=(m_ub, n))
    A_eq = rng.uniform(-1.0, 1.0, size=(m_eq, n))
    upper = rng.uniform(1.0, 4.0, size=n)
    x0 = rng.uniform(0.0, 1.0, size=n) * upper
    b_ub = A_ub @ x0 + rng.uniform(0.0, 1.0, size=m_ub)
    b_eq = A_eq @ x0
    c = rng.normal(size=n)

    A = np.vstack([A_ub, A_eq])
    p = LpProblem.from_dense(
        A, ["L"] * m_ub + ["E"] * m_eq, np.concatenate([b_ub, b_eq]), c, upper=upper
    )
    ours = solve_lp(p)
    ref = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq,
                  bounds=list(zip(np.zeros(n), upper)), method="highs")
    assert ref.status == 0
    assert ours.is_optimal
    assert ours.objective == pytest.approx(ref.fun, abs=1e-6)
    assert ours.primal_residual <= 1e-6


def test_problem_validation():
    with pytest.raises(SolverError):
        LpProblem.from_dense([[1.0]], ["L"], [1.0], [1.0], lower=[-math.inf])
    with pytest.raises(SolverError):
        LpProblem.from_dense([[1.0]], ["<"], [1.0], [1.0])
    with pytest.raises(SolverError):
        LpProblem.from_dense([[1.0]], ["L"], [1.0], [1.0, 2.0])
    with pytest.raises(SolverError):
        LpProblem.from_dense([[1.0]], ["L"], [1.0], [1.0], lower=[2.0], upper=[1.0])


def test_settings_validation():
    with pytest.raises(SolverError):
        SimplexSettings(iteration_limit=0)
    with pytest.raises(SolverError):
        SimplexSettings(feasibility_tol=0.0)
