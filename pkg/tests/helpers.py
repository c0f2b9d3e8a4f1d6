"""
GreenEdge - Test helpers and oracles

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers
"""

import itertools
import math
from dataclasses import replace

import numpy as np

from greenedge.core import GenSpec, Scenario
from greenedge.core.scenario import EdgeCloudParams
from greenedge.model import MilpModel


SMALL_SPEC = GenSpec(seed=3, num_areas=3, num_ecs=2, num_periods=3)


def small_spec(seed: int = 3, **overrides) -> GenSpec:
    """A fast-solving scenario specification."""
    return replace(SMALL_SPEC, seed=seed, **overrides)


def tiny_spec(seed: int) -> GenSpec:
    """At most 2 areas, 2 ECs, 2 periods and 3 servers per EC."""
    rng = np.random.Generator(np.random.PCG64(1000 + seed))
    return GenSpec(
        seed=seed,
        num_areas=int(rng.integers(1, 3)),
        num_ecs=int(rng.integers(1, 3)),
        num_periods=int(rng.integers(1, 3)),
        num_servers=(1, 3),
        demand=(0.2, 1.5),
        grid_cap=(2.0, 6.0),
        renewable=(0.0, 2.0),
        batt_cap_max=(3.0, 4.0),
        batt_cap_min=(0.5, 1.0),
        charge_max=(0.5, 1.5),
        discharge_max=(0.5, 1.5),
    )


def make_ec(periods: int = 1, **overrides) -> EdgeCloudParams:
    """Hand-set EC with simple round numbers."""
    values = dict(
        max_servers=2,
        p_idle=0.5,
        p_peak=1.5,
        pue=1.0,
        price=[0.2] * periods,
        grid_cap=[10.0] * periods,
        renewable=[0.0] * periods,
        batt_cap_max=4.0,
        batt_cap_min=1.0,
        batt_init=1.0,
        charge_max=1.0,
        discharge_max=1.0,
        emission_factor=0.5,
        carbon_tax=20.0,
    )
    values.update(overrides)
    return EdgeCloudParams(**values)


def make_scenario(num_periods: int = 1, ecs=None, **overrides) -> Scenario:
    """One area, one EC, hand-set parameters."""
    ecs = ecs or [make_ec(num_periods)]
    values = dict(
        num_areas=1,
        num_ecs=len(ecs),
        num_periods=num_periods,
        period_length_hours=1.0,
        demand=[[1.0] * num_periods],
        resource_per_request=0.5,
        service_rate=1.0,
        unmet_penalty=[5.0],
        delay=[[5.0] * len(ecs)],
        max_delay=100.0,
        max_utilization=1.0,
        ecs=ecs,
        sellback_ratio=0.5,
        charge_efficiency=1.0,
    )
    values.update(overrides)
    return Scenario(**values)


def brute_force(model: MilpModel) -> float:
    """Minimum over every integer assignment, each LP solved by HiGHS."""
    from scipy.optimize import linprog

    A = model.constraint_matrix().toarray()
    senses = model.senses()
    rhs = model.rhs()
    le = [i for i, s in enumerate(senses) if s == "L"]
    ge = [i for i, s in enumerate(senses) if s == "G"]
    eq = [i for i, s in enumerate(senses) if s == "E"]
    A_ub = np.vstack([A[le], -A[ge]]) if le or ge else None
    b_ub = np.concatenate([rhs[le], -rhs[ge]]) if le or ge else None
    A_eq = A[eq] if eq else None
    b_eq = rhs[eq] if eq else None
    cost = model.objective_vector()

    lower, upper = model.lower_bounds(), model.upper_bounds()
    integers = np.flatnonzero(model.integer_mask())
    choices = [range(int(lower[k]), int(upper[k]) + 1) for k in integers]
    best = math.inf
    for assignment in itertools.product(*choices):
        lo, hi = lower.copy(), upper.copy()
        lo[integers] = assignment
        hi[integers] = assignment
        bounds = [(l, None if math.isinf(h) else h) for l, h in zip(lo, hi)]
        res = linprog(cost, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq,
                      bounds=bounds, method="highs")
        if res.status == 0:
            best = min(best, res.fun)
    return best


