"""
GreenEdge - Cost Report and Solution Checker Tests

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers
"""

import pytest

from greenedge.core import generate_scenario
from greenedge.model import (
    M0,
    M2,
    ConstraintFamily,
    ModelOptions,
    Solution,
    SolutionDocument,
    SolutionError,
    SolutionStatus,
    build_model,
    cost_report,
    load_solution,
    save_solution,
    summarize_costs,
    validate_solution,
)
from greenedge.solver import solve_milp
from tests.helpers import make_ec, make_scenario, small_spec


@pytest.fixture(scope="module")
def solved():
    s = generate_scenario(small_spec(seed=9))
    sol, stats = solve_milp(build_model(s, M0))
    return s, sol, stats


def test_cost_report_for_grid_purchase():
    s = make_scenario()
    sol, _ = solve_milp(build_model(s, M0))
    report = cost_report(s, sol)
    assert report.electricity_cost == pytest.approx(0.6)
    assert report.carbon_cost == pytest.approx(0.03)
    assert report.unmet_cost == pytest.approx(0.0, abs=1e-9)
    assert report.total == pytest.approx(0.63)
    assert report.total_emissions_tons == pytest.approx(3.0 * 0.5 / 1000.0)
    assert report.grid_energy_kwh == pytest.approx(3.0)


def test_cost_report_with_sellback():
    s = make_scenario(ecs=[make_ec(renewable=[10.0])])
    sol, _ = solve_milp(build_model(s, M0))
    report = cost_report(s, sol)
    assert report.sellback_revenue == pytest.approx(0.7)
    assert report.net_electricity == pytest.approx(-0.7)
    assert report.total_curtailed_kwh == pytest.approx(0.0, abs=1e-9)
    assert report.renewable_utilization == pytest.approx(1.0)


def test_cost_total_matches_objective(solved):
    s, sol, _ = solved
    report = cost_report(s, sol)
    assert report.total == pytest.approx(sol.objective, rel=1e-9, abs=1e-9)
    assert report.total == pytest.approx(
        report.unmet_cost + report.net_electricity + report.carbon_cost
    )
    assert sum(report.ec_emissions_tons) == pytest.approx(report.total_emissions_tons)


def test_objective_mismatch_is_recorded(solved, caplog):
    s, sol, _ = solved
    assert abs(cost_report(s, sol).objective_mismatch) <= 1e-9 * max(1.0, abs(sol.objective))

    shifted = Solution(SolutionStatus.OPTIMAL, sol.names, sol.values, sol.objective + 2.0)
    with caplog.at_level("WARNING", logger="greenedge.model.costs"):
        report = cost_report(s, shifted)
    assert report.objective_mismatch == pytest.approx(-2.0)
    assert report.to_dict()["objective_mismatch"] == pytest.approx(-2.0)
    assert "differs from objective" in caplog.text


def test_cost_report_needs_optimal_solution(solved):
    s, sol, _ = solved
    feasible = Solution(SolutionStatus.FEASIBLE, sol.names, sol.values, sol.objective)
    with pytest.raises(SolutionError):
        cost_report(s, feasible)
    assert summarize_costs(s, feasible).total == pytest.approx(sol.objective, abs=1e-9)
    with pytest.raises(SolutionError):
        summarize_costs(s, Solution(SolutionStatus.INFEASIBLE, sol.names))


def test_optimal_solution_passes_the_checker(solved):
    s, sol, _ = solved
    report = validate_solution(s, M0, sol)
    assert report.passed
    assert report.max_residual <= 1e-6
    assert not report.integrality_violations


def test_perturbed_solution_fails(solved):
    s, sol, _ = solved
    values = sol.as_dict()
    values["PG[1][1]"] += 0.5
    broken = Solution(sol.status, list(values), list(values.values()), sol.objective)
    report = validate_solution(s, M0, broken)
    assert not report.passed
    assert report.residual(ConstraintFamily.BALANCE) == pytest.approx(0.5)
    assert report.worst[ConstraintFamily.BALANCE].startswith("balance[1][1]")


def test_fractional_server_count_is_reported(solved):
    s, sol, _ = solved
    values = sol.as_dict()
    values["c[1][1]"] += 0.5
    broken = Solution(sol.status, list(values), list(values.values()), sol.objective)
    report = validate_solution(s, M0, broken)
    assert "c[1][1]" in report.integrality_violations
    assert not report.passed


def test_missing_variables_are_reported(solved):
    s, sol, _ = solved
    values = sol.as_dict()
    del values["x[1][1][1]"]
    partial = Solution(sol.status, list(values), list(values.values()), sol.objective)
    report = validate_solution(s, M0, partial)
    assert report.missing == ["x[1][1][1]"]
    assert not report.passed


def test_variant_mismatch_is_caught(solved):
    s, sol, _ = solved
    values = sol.as_dict()
    if all(values[f"PS[{j + 1}][{t + 1}]"] == 0.0
           for j in range(s.num_ecs) for t in range(s.num_periods)):
        values["PS[1][1]"] = 1.0
    mismatched = Solution(sol.status, list(values), list(values.values()), sol.objective)
    assert not validate_solution(s, M2, mismatched).passed


def test_simultaneous_charge_and_discharge_is_a_warning():
    s = make_scenario(ecs=[make_ec(renewable=[10.0])])
    model = build_model(s, M0)
    sol, _ = solve_milp(model)
    values = sol.as_dict()
    values["PC[1][1]"] += 0.5
    values["PD[1][1]"] += 0.5
    both = Solution(sol.status, list(values), list(values.values()))
    report = validate_solution(s, M0, both)
    assert report.passed
    assert [w.rule for w in report.issues.warnings] == ["simultaneous_charge"]


def test_report_serializes_every_family(solved):
    s, sol, _ = solved
    data = validate_solution(s, "M0", sol).to_dict()
    assert data["passed"] is True
    assert set(data["residuals"]) == {f.value for f in ConstraintFamily}


def test_solution_document_round_trip(tmp_path, solved):
    s, sol, stats = solved
    options = ModelOptions(load_term="printed")
    document = SolutionDocument(sol, M2, options, cost_report(s, sol), stats.to_dict())
    path = tmp_path / "solution.yaml"
    save_solution(document, path)
    loaded = load_solution(path)
    assert loaded.variant is M2
    assert loaded.options == options
    assert loaded.solution.status == SolutionStatus.OPTIMAL
    assert loaded.solution.as_dict() == pytest.approx(sol.as_dict())
    assert loaded.costs.total == pytest.approx(document.costs.total)
    assert loaded.stats["nodes_explored"] == stats.nodes_explored


def test_malformed_solution_document(tmp_path):
    path = tmp_path / "broken.yaml"
    path.write_text("values: {}\n", encoding="utf-8")
    with pytest.raises(SolutionError):
        load_solution(path)
