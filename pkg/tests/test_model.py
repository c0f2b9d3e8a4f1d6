"""
GreenEdge - MILP Model Tests

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers
"""

import math
from dataclasses import replace

import numpy as np
import pytest

from greenedge.core import generate_scenario
from greenedge.model import (
    M0,
    M1,
    M2,
    M3,
    ConstraintFamily,
    DimensionMismatchError,
    MilpModel,
    ModelError,
    ModelOptions,
    Solution,
    SolutionError,
    SolutionStatus,
    Variant,
    build_model,
    solution_from_values,
    var_name,
)
from greenedge.solver import solve_milp
from tests.helpers import make_scenario


@pytest.fixture(scope="module")
def default_model():
    return build_model(generate_scenario(), M0)


def test_default_model_size(default_model):
    assert default_model.num_variables == 1856
    assert default_model.num_integers == 96
    assert default_model.num_rows == 120 + 96 * 4


def test_variant_without_battery_has_no_dynamics_rows():
    model = build_model(generate_scenario(), M1)
    assert model.num_rows == 120 + 96 * 3
    counts = model.family_counts()
    assert counts[ConstraintFamily.DYNAMICS.value] == (0, 0)


def test_names_are_one_based(default_model):
    assert default_model.has_variable("x[1][1][1]")
    assert default_model.has_variable("x[10][8][12]")
    assert default_model.has_variable("E[8][13]")
    assert not default_model.has_variable("E[8][14]")
    assert var_name("PG", 0, 11) == "PG[1][12]"


def test_families(default_model):
    assert default_model.family_of("c[1][1]") == ConstraintFamily.SERVERS
    assert default_model.family_of("alloc[1][1]") == ConstraintFamily.ALLOCATION
    assert default_model.family_of("util[2][3]") == ConstraintFamily.UTILIZATION
    assert default_model.family_of("dyn[1][1]") == ConstraintFamily.DYNAMICS
    assert default_model.family_of("PS[1][1]") == ConstraintFamily.SELLBACK


def test_only_server_counts_are_integer(default_model):
    integers = [v.name for v in default_model.variables if v.integer]
    assert all(name.startswith("c[") for name in integers)


def test_variant_bounds():
    s = make_scenario()
    m1 = build_model(s, M1)
    for name in ("PC[1][1]", "PD[1][1]", "PS[1][1]"):
        assert m1.variable(name).upper == 0.0
    m3 = build_model(s, M3)
    assert math.isinf(m3.variable("PS[1][1]").upper)
    assert m3.variable("PC[1][1]").upper == 0.0
    m2 = build_model(s, M2)
    assert m2.variable("PS[1][1]").upper == 0.0
    assert m2.variable("PC[1][1]").upper == 1.0


def test_battery_levels():
    s = make_scenario(num_periods=2)
    model = build_model(s, M0)
    first = model.variable("E[1][1]")
    assert first.lower == first.upper == 1.0
    final = model.variable("E[1][3]")
    assert (final.lower, final.upper) == (1.0, 4.0)
    free = build_model(s, M0, ModelOptions(bound_final_level=False)).variable("E[1][3]")
    assert free.lower == 0.0 and math.isinf(free.upper)


def test_objective_coefficients():
    s = make_scenario()
    model = build_model(s, M0)
    ec = s.ecs[0]
    assert model.variable("PG[1][1]").cost == pytest.approx(0.2 + 20.0 * 0.5 / 1000.0)
    assert model.variable("PS[1][1]").cost == pytest.approx(-0.1)
    assert model.variable("q[1][1]").cost == 5.0
    assert model.variable("c[1][1]").cost == 0.0
    assert ec.carbon_charge_per_kwh == pytest.approx(0.01)


def test_allocation_bound_modes():
    s = make_scenario(demand=[[3.0]], resource_per_request=0.5)
    assert build_model(s).variable("x[1][1][1]").upper == pytest.approx(6.0)
    printed = build_model(s, options=ModelOptions(allocation_bound="printed"))
    assert printed.variable("x[1][1][1]").upper == pytest.approx(3.0)


def test_ineligible_pair_is_fixed_to_zero():
    s = make_scenario(delay=[[80.0]], max_delay=100.0)
    assert build_model(s).variable("x[1][1][1]").upper == 0.0


def test_load_term_sign():
    s = make_scenario()
    elastic = build_model(s).row("power[1][1]")
    printed = build_model(s, options=ModelOptions(load_term="printed")).row("power[1][1]")
    k = build_model(s).index_of("x[1][1][1]")
    assert elastic.coefficients[k] == pytest.approx(-1.0)
    assert printed.coefficients[k] == pytest.approx(1.0)


def test_curtailment_switch():
    s = make_scenario(ecs=None)
    s = replace(s, ecs=(replace(s.ecs[0], renewable=(3.0,)),))
    assert build_model(s).variable("PW[1][1]").upper == 3.0
    assert build_model(s, options=ModelOptions(curtailment=False)).variable("PW[1][1]").upper == 0.0


def test_dimension_mismatch():
    s = make_scenario()
    broken = replace(s, demand=((1.0,), (1.0,)))
    with pytest.raises(DimensionMismatchError):
        build_model(broken)


def test_variant_parse():
    assert Variant.parse("m2") is M2
    assert Variant.parse_list("M0, M3") == [M0, M3]
    with pytest.raises(ModelError):
        Variant.parse("M9")
    with pytest.raises(ModelError):
        Variant.parse_list(" , ")


def test_invalid_options():
    with pytest.raises(ModelError):
        ModelOptions(load_term="sideways")


def test_general_container():
    model = MilpModel("tiny")
    x = model.add_variable("x", upper=4, cost=-1, integer=True)
    y = model.add_variable("y", cost=2)
    model.add_row("cap", {x: 2.0, "y": 0.0}, "<=", 7.0)
    model.add_row("link", {"x": 1.0, y: -1.0}, ">=", 0.0)
    assert model.row("cap").coefficients == {x: 2.0}
    A = model.constraint_matrix().toarray()
    assert A.tolist() == [[2.0, 0.0], [1.0, -1.0]]
    assert model.senses() == ["L", "G"]
    assert model.validate() == []
    lp = model.to_lp()
    assert lp.num_cols == 2 and lp.num_rows == 2


def test_container_errors():
    model = MilpModel()
    model.add_variable("x")
    with pytest.raises(ModelError):
        model.add_variable("x")
    with pytest.raises(ModelError):
        model.add_variable("free", lower=-math.inf)
    with pytest.raises(ModelError):
        model.add_variable("bad", lower=2.0, upper=1.0)
    with pytest.raises(ModelError):
        model.add_row("r", {"missing": 1.0}, "=", 0.0)


def test_solution_access():
    model = MilpModel()
    model.add_variable("a", cost=1.0)
    model.add_variable("b", cost=2.0)
    sol = solution_from_values(model, [1.0, 3.0])
    assert sol.objective == pytest.approx(7.0)
    assert sol.value("b") == 3.0
    assert sol.as_dict() == {"a": 1.0, "b": 3.0}
    with pytest.raises(SolutionError):
        sol.value("c")
    empty = Solution(SolutionStatus.INFEASIBLE, ["a", "b"])
    assert not empty.has_values
    with pytest.raises(SolutionError):
        empty.value("a")
    with pytest.raises(SolutionError):
        Solution(SolutionStatus.OPTIMAL, ["a"], np.array([1.0, 2.0]))


def test_solution_dict_round_trip():
    sol = Solution(SolutionStatus.OPTIMAL, ["a", "b"], np.array([1.5, 0.0]), 4.0, root_bound=3.5)
    again = Solution.from_dict(sol.to_dict())
    assert again.status == SolutionStatus.OPTIMAL
    assert again.as_dict() == sol.as_dict()
    assert again.objective == 4.0
    assert again.root_bound == 3.5


def test_battery_level_change_matches_net_flow(small_scenario):
    s = small_scenario
    sol, _ = solve_milp(build_model(s, M0))
    assert sol.is_optimal
    T, eta = s.num_periods, s.charge_efficiency
    for j in range(s.num_ecs):
        flow = sum(
            eta * sol.value(var_name("PC", j, t)) - sol.value(var_name("PD", j, t)) / eta
            for t in range(T)
        )
        change = sol.value(var_name("E", j, T)) - sol.value(var_name("E", j, 0))
        assert change == pytest.approx(s.period_length_hours * flow, abs=1e-6)
