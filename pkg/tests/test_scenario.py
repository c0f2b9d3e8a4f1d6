"""
GreenEdge - Scenario Tests

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers
"""

import math
from dataclasses import replace

import numpy as np
import pytest

from greenedge.core import (
    ScaleFactorError,
    ScaleFactors,
    ScenarioParseError,
    ScenarioValidationError,
    ScenarioValidator,
    eligibility,
    load_scenario,
    save_scenario,
    scale_scenario,
    scenario_summary,
)
from greenedge.core.document import scenario_from_document
from tests.helpers import make_ec, make_scenario


def test_eligibility_round_trip_delay():
    """Eligibility compares the round trip against the threshold."""
    assert eligibility(10.0, 20.0) == 1
    assert eligibility(10.5, 20.0) == 0
    assert eligibility(0.0, 0.0) == 1


def test_eligibility_matrix_follows_max_delay():
    s = make_scenario(delay=[[30.0]], max_delay=50.0)
    assert s.eligibility_matrix().tolist() == [[0]]
    assert replace(s, max_delay=60.0).eligibility_matrix().tolist() == [[1]]


def test_eligibility_is_monotone_in_delay_and_threshold():
    delays = [0.0, 5.0, 10.0, 24.9, 25.0, 25.1, 60.0]
    thresholds = [0.0, 10.0, 50.0, 50.2, 120.0]
    for d_max in thresholds:
        bits = [eligibility(d, d_max) for d in delays]
        assert bits == sorted(bits, reverse=True)
    for d in delays:
        bits = [eligibility(d, d_max) for d_max in thresholds]
        assert bits == sorted(bits)


def test_lower_threshold_never_adds_eligible_pairs(small_scenario):
    wide = small_scenario.eligibility_matrix()
    for factor in (0.9, 0.5, 0.1):
        narrow = replace(small_scenario, max_delay=small_scenario.max_delay * factor)
        assert np.all(narrow.eligibility_matrix() <= wide)
    longer = tuple(tuple(d + 5.0 for d in row) for row in small_scenario.delay)
    assert np.all(replace(small_scenario, delay=longer).eligibility_matrix() <= wide)


def test_sellback_price_is_zeta_times_price(small_scenario):
    for j, ec in enumerate(small_scenario.ecs):
        for t in range(small_scenario.num_periods):
            assert small_scenario.sellback_price(j, t) == pytest.approx(
                small_scenario.sellback_ratio * ec.price[t]
            )


def test_scale_scenario_multiplies_renewables_and_prices(small_scenario):
    scaled = scale_scenario(small_scenario, ScaleFactors(psi=2.0, xi_e=1.5))
    for before, after in zip(small_scenario.ecs, scaled.ecs):
        assert after.renewable == pytest.approx([2.0 * v for v in before.renewable])
        assert after.price == pytest.approx([1.5 * v for v in before.price])
        assert after.grid_cap == before.grid_cap
    assert scaled.sellback_price(0, 0) == pytest.approx(1.5 * small_scenario.sellback_price(0, 0))


def test_scale_scenario_leaves_input_untouched(small_scenario):
    before = small_scenario.to_dict()
    scale_scenario(small_scenario, ScaleFactors(psi=3.0, xi_emax=0.1))
    assert small_scenario.to_dict() == before


def test_scale_battery_clamps_min_and_initial_level():
    s = make_scenario(ecs=[make_ec(batt_cap_max=4.0, batt_cap_min=2.0, batt_init=3.0)])
    scaled = scale_scenario(s, ScaleFactors(xi_emax=0.25))
    ec = scaled.ecs[0]
    assert ec.batt_cap_max == pytest.approx(1.0)
    assert ec.batt_cap_min == pytest.approx(1.0)
    assert ec.batt_init == pytest.approx(1.0)
    assert ScenarioValidator().validate(scaled).is_valid


def test_scale_thresholds_and_zeta_override():
    s = make_scenario(max_utilization=0.8, max_delay=40.0, sellback_ratio=0.5)
    scaled = scale_scenario(s, ScaleFactors(gamma_scale=2.0, xi_dmax=0.5, zeta_override=0.0))
    assert scaled.max_utilization == 1.0
    assert scaled.max_delay == pytest.approx(20.0)
    assert scaled.sellback_ratio == 0.0


def test_identity_scale_is_a_no_op(small_scenario):
    assert scale_scenario(small_scenario, ScaleFactors()).to_dict() == small_scenario.to_dict()


@pytest.mark.parametrize("kwargs", [{"psi": 0.0}, {"xi_e": -1.0}, {"zeta_override": 1.5}])
def test_invalid_scale_factors(kwargs):
    with pytest.raises(ScaleFactorError):
        ScaleFactors(**kwargs)


def test_scale_factor_combine():
    combined = ScaleFactors(psi=2.0, zeta_override=0.3).combine(ScaleFactors(psi=0.5, xi_e=3.0))
    assert combined.psi == pytest.approx(1.0)
    assert combined.xi_e == pytest.approx(3.0)
    assert combined.zeta_override == 0.3


def test_validator_reports_every_violation():
    bad_ec = make_ec(p_idle=2.0, p_peak=1.0, pue=0.9)
    s = make_scenario(ecs=[bad_ec], max_utilization=1.5)
    result = ScenarioValidator().validate(s)
    assert not result.is_valid
    paths = {issue.path for issue in result.errors}
    assert "$.max_utilization" in paths
    assert "$.ecs[0].p_idle" in paths
    assert "$.ecs[0].pue" in paths


def test_validator_battery_ordering():
    s = make_scenario(ecs=[make_ec(batt_cap_min=2.0, batt_init=1.0)])
    with pytest.raises(ScenarioValidationError) as excinfo:
        s.validate()
    assert excinfo.value.rule == "ordering"
    assert excinfo.value.path == "$.ecs[0].batt_init"


def test_validator_rejects_negative_demand():
    s = make_scenario(demand=[[-1.0]])
    result = ScenarioValidator().validate(s)
    assert [i.rule for i in result.errors] == ["nonnegative"]


@pytest.mark.parametrize(
    "name, value",
    [("p_peak", math.nan), ("pue", math.nan), ("batt_cap_max", math.inf), ("carbon_tax", math.nan)],
)
def test_validator_rejects_non_finite_ec_values(name, value):
    s = make_scenario(ecs=[make_ec(**{name: value})])
    with pytest.raises(ScenarioValidationError) as excinfo:
        s.validate()
    assert excinfo.value.rule == "finite"
    assert excinfo.value.path == f"$.ecs[0].{name}"


def test_validator_rejects_non_finite_scenario_values():
    result = ScenarioValidator().validate(make_scenario(service_rate=math.nan, max_delay=math.inf))
    paths = {issue.path for issue in result.errors if issue.rule == "finite"}
    assert paths == {"$.service_rate", "$.max_delay"}


def test_document_with_infinite_capacity_is_rejected(small_scenario):
    document = small_scenario.to_dict()
    document["ecs"][0]["batt_cap_max"] = math.inf
    with pytest.raises(ScenarioValidationError) as excinfo:
        scenario_from_document(document)
    assert excinfo.value.path == "$.ecs[0].batt_cap_max"


def test_document_round_trip(tmp_path, small_scenario):
    path = tmp_path / "scenario.yaml"
    save_scenario(small_scenario, path)
    text = path.read_text(encoding="utf-8")
    assert text.startswith("# greenedge scenario document")
    loaded = load_scenario(path)
    assert loaded == small_scenario


def test_document_missing_field_is_rejected(small_scenario):
    document = small_scenario.to_dict()
    del document["demand"]
    with pytest.raises(ScenarioValidationError):
        scenario_from_document(document)


def test_document_wrong_type_is_rejected(small_scenario):
    document = small_scenario.to_dict()
    document["num_areas"] = "three"
    with pytest.raises(ScenarioValidationError) as excinfo:
        scenario_from_document(document)
    assert "num_areas" in excinfo.value.path


def test_document_shape_mismatch_is_rejected(small_scenario):
    document = small_scenario.to_dict()
    document["demand"] = document["demand"][:-1]
    with pytest.raises(ScenarioValidationError):
        scenario_from_document(document)


def test_malformed_yaml(tmp_path):
    path = tmp_path / "broken.yaml"
    path.write_text("num_areas: [1, 2\n", encoding="utf-8")
    with pytest.raises(ScenarioParseError):
        load_scenario(path)


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_scenario(tmp_path / "absent.yaml")


def test_summary(small_scenario):
    summary = scenario_summary(small_scenario)
    assert summary["areas"] == 3
    assert summary["ecs"] == 2
    assert summary["eligible_pairs"] == 6


def test_scaling_twice_equals_combined_scaling(small_scenario):
    first = ScaleFactors(psi=1.5, xi_e=0.8, xi_dmax=1.2)
    second = ScaleFactors(psi=2.0, xi_e=1.25, xi_emax=1.1)
    twice = scale_scenario(scale_scenario(small_scenario, first), second)
    once = scale_scenario(small_scenario, first.combine(second))
    for a, b in zip(twice.ecs, once.ecs):
        assert a.renewable == pytest.approx(b.renewable, rel=1e-12)
        assert a.price == pytest.approx(b.price, rel=1e-12)
        assert a.batt_cap_max == pytest.approx(b.batt_cap_max, rel=1e-12)
    assert twice.max_delay == pytest.approx(once.max_delay, rel=1e-12)
