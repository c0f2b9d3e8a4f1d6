"""
GreenEdge - Scenario Generator Tests

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers
"""

import pytest

from greenedge.core import GenSpec, GenSpecError, ScenarioGenerator, dump_scenario, generate_scenario


def test_default_dimensions():
    s = generate_scenario()
    assert (s.num_areas, s.num_ecs, s.num_periods) == (10, 8, 12)
    assert len(s.demand) == 10 and all(len(row) == 12 for row in s.demand)
    assert len(s.delay) == 10 and all(len(row) == 8 for row in s.delay)
    assert len(s.ecs) == 8


def _within(bounds, value):
    low, high = bounds
    return low <= value <= high


def _assert_in_ranges(spec, s):
    for ec in s.ecs:
        assert spec.num_servers[0] <= ec.max_servers <= spec.num_servers[1]
        for name in (
            "p_idle",
            "p_peak",
            "pue",
            "batt_cap_max",
            "batt_cap_min",
            "charge_max",
            "discharge_max",
            "emission_factor",
            "carbon_tax",
        ):
            assert _within(getattr(spec, name), getattr(ec, name)), name
        assert all(_within(spec.price, v) for v in ec.price)
        assert all(_within(spec.grid_cap, v) for v in ec.grid_cap)
        assert all(_within(spec.renewable, v) for v in ec.renewable)
        assert ec.batt_init == ec.batt_cap_min
    for row in s.demand:
        assert all(_within(spec.demand, v) for v in row)
    for row in s.delay:
        assert all(_within(spec.delay, v) for v in row)
    assert all(_within(spec.unmet_penalty, p) for p in s.unmet_penalty)
    assert s.max_delay >= spec.max_delay


def test_values_lie_in_their_ranges():
    for seed in range(100):
        spec = GenSpec(seed=seed)
        _assert_in_ranges(spec, generate_scenario(spec))


@pytest.mark.slow
def test_values_lie_in_their_ranges_over_many_seeds():
    for seed in range(1000):
        spec = GenSpec(seed=seed)
        _assert_in_ranges(spec, generate_scenario(spec))


def test_same_seed_same_document():
    assert dump_scenario(generate_scenario(GenSpec(seed=7))) == dump_scenario(
        generate_scenario(GenSpec(seed=7))
    )


def test_different_seed_differs():
    assert generate_scenario(GenSpec(seed=1)) != generate_scenario(GenSpec(seed=2))


def test_more_areas_keep_every_ec():
    small = generate_scenario(GenSpec(seed=5, num_areas=4))
    large = generate_scenario(GenSpec(seed=5, num_areas=9))
    assert small.ecs == large.ecs
    assert large.num_areas == 9


def test_force_eligible_raises_max_delay():
    spec = GenSpec(seed=2, delay=(60.0, 80.0), max_delay=100.0)
    s = generate_scenario(spec)
    assert s.max_delay >= 2.0 * max(max(row) for row in s.delay)
    assert s.eligibility_matrix().all()


def test_without_force_eligible_some_pairs_drop():
    spec = GenSpec(seed=2, delay=(60.0, 80.0), max_delay=100.0, force_eligible=False)
    s = generate_scenario(spec)
    assert s.max_delay == 100.0
    assert not s.eligibility_matrix().any()


@pytest.mark.parametrize("policy, expected", [("min", "batt_cap_min"), ("max", "batt_cap_max")])
def test_battery_start_policy(policy, expected):
    s = generate_scenario(GenSpec(seed=4, battery_start=policy))
    for ec in s.ecs:
        assert ec.batt_init == getattr(ec, expected)


def test_mid_battery_start():
    s = generate_scenario(GenSpec(seed=4, battery_start="mid"))
    ec = s.ecs[0]
    assert ec.batt_init == pytest.approx(0.5 * (ec.batt_cap_min + ec.batt_cap_max))


@pytest.mark.parametrize(
    "kwargs",
    [
        {"p_idle": (0.5, 1.4), "p_peak": (1.2, 1.5)},
        {"batt_cap_min": (30.0, 95.0)},
        {"price": (0.3, 0.1)},
        {"num_areas": 0},
        {"battery_start": "full"},
        {"sellback_ratio": 1.2},
    ],
)
def test_invalid_spec(kwargs):
    with pytest.raises(GenSpecError):
        GenSpec(**kwargs)


def test_with_overrides_ignores_none():
    spec = GenSpec(seed=3).with_overrides(seed=None, num_ecs=2)
    assert spec.seed == 3
    assert spec.num_ecs == 2


def test_generate_many_steps_the_seed():
    scenarios = ScenarioGenerator(GenSpec(seed=10, num_areas=2, num_ecs=2, num_periods=2)).generate_many(3)
    assert len(scenarios) == 3
    assert scenarios[1] == generate_scenario(GenSpec(seed=11, num_areas=2, num_ecs=2, num_periods=2))
