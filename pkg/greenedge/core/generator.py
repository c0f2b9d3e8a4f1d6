"""

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers

LEGAL NOTICE:
This software is proprietary and confidential. Unauthorized copying,
distribution, modification, or use is strictly prohibited without
explicit written permission from the copyright holder.

Scenario Generator - Seeded synthetic scenarios.

Features:
- Default ranges reproduce the reference edge system (8 ECs, 10 areas, 12 periods)
- Every parameter drawn from a configurable closed uniform range
- Bit-identical output for identical (spec, seed) on every platform

Random numbers come from numpy's PCG64 bit generator (64-bit output,
stream stable across numpy releases and platforms). Floats are sampled as
low + u * (high - low) with u = rng.random() in [0, 1); integers with
rng.integers(low, high + 1). The draw order is fixed:

1. per EC j: servers, p_idle, p_peak, pue, price[T], grid_cap[T],
   renewable[T], batt_cap_max, batt_cap_min, charge_max, discharge_max,
   emission_factor, carbon_tax
2. unmet penalty per area
3. demand, area-major
4. delay, area-major

so regenerating with a different number of areas leaves every EC unchanged.
"""

from dataclasses import dataclass, fields, replace
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .scenario import EdgeCloudParams, Scenario
from .validator import ScenarioError

Range = Tuple[float, float]

BATTERY_START_POLICIES = ("min", "mid", "max")


class GenSpecError(ScenarioError):
    """Raised when a generator specification is invalid."""


@dataclass(frozen=True)
class GenSpec:
    """
    Generator specification: seed, dimensions and per-parameter ranges.

    The defaults are the reference default setting. Ranges are closed
    intervals (low, high); a degenerate range (v, v) pins the value.
    """
    seed: int = 0
    num_areas: int = 10
    num_ecs: int = 8
    num_periods: int = 12
    period_length_hours: float = 1.0

    p_idle: Range = (0.45, 0.55)
    p_peak: Range = (1.2, 1.5)
    pue: Range = (1.8, 1.9)
    price: Range = (0.10, 0.35)
    grid_cap: Range = (1000.0, 1500.0)
    renewable: Range = (80.0, 100.0)
    batt_cap_max: Range = (90.0, 100.0)
    batt_cap_min: Range = (30.0, 50.0)
    charge_max: Range = (70.0, 80.0)
    discharge_max: Range = (70.0, 80.0)
    demand: Range = (10.0, 30.0)
    emission_factor: Range = (0.1, 0.8)
    carbon_tax: Range = (20.0, 50.0)
    num_servers: Tuple[int, int] = (100, 150)
    unmet_penalty: Range = (5.0, 5.0)
    delay: Range = (2.0, 25.0)

    max_delay: float = 100.0
    max_utilization: float = 0.9
    resource_per_request: float = 0.5
    service_rate: float = 0.8
    sellback_ratio: float = 0.8
    charge_efficiency: float = 0.8
    battery_start: str = "min"
    force_eligible: bool = True

    def __post_init__(self):
        self.validate()

    def ranges(self) -> Dict[str, Range]:
        """All sampled ranges by field name."""
        return {
            f.name: getattr(self, f.name)
            for f in fields(self)
            if isinstance(getattr(self, f.name), tuple)
        }

    def validate(self) -> None:
        """
        Check the specification.

        Raises:
            GenSpecError: On the first invalid range or setting
        """
        for name, (low, high) in self.ranges().items():
            if low > high:
                raise GenSpecError(f"invalid range for {name}: low {low} > high {high}")
            if low < 0:
                raise GenSpecError(f"invalid range for {name}: negative low {low}")
        for name in ("num_areas", "num_ecs", "num_periods"):
            if getattr(self, name) < 1:
                raise GenSpecError(f"{name} must be >= 1")
        if self.p_idle[1] > self.p_peak[0]:
            raise GenSpecError("p_idle range must lie below the p_peak range")
        if self.batt_cap_min[1] > self.batt_cap_max[0]:
            raise GenSpecError("batt_cap_min range must lie below the batt_cap_max range")
        if self.pue[0] < 1.0:
            raise GenSpecError("pue range must lie at or above 1")
        if self.battery_start not in BATTERY_START_POLICIES:
            raise GenSpecError(
                f"battery_start must be one of {BATTERY_START_POLICIES}, got {self.battery_start!r}"
            )
        if not 0.0 < self.max_utilization <= 1.0:
            raise GenSpecError("max_utilization must lie in (0,1]")
        if not 0.0 <= self.sellback_ratio <= 1.0:
            raise GenSpecError("sellback_ratio must lie in [0,1]")
        if not 0.0 < self.charge_efficiency <= 1.0:
            raise GenSpecError("charge_efficiency must lie in (0,1]")
        if self.resource_per_request <= 0 or self.service_rate <= 0:
            raise GenSpecError("resource_per_request and service_rate must be > 0")
        if self.period_length_hours <= 0:
            raise GenSpecError("period_length_hours must be > 0")

    def with_overrides(self, **overrides: Any) -> "GenSpec":
        """Copy with some fields replaced (None values are ignored)."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


class ScenarioGenerator:
    """
    Generates scenarios from a GenSpec.

    Example:
        generator = ScenarioGenerator(GenSpec(seed=7))
        scenario = generator.generate()
    """

    def __init__(self, spec: Optional[GenSpec] = None):
        """
        Initialize the generator.

        Args:
            spec: Generator specification (defaults to the reference setting)
        """
        self.spec = spec or GenSpec()
        self.spec.validate()

    def generate(self) -> Scenario:
        """
        Generate the scenario determined by the spec and its seed.

        Returns:
            A validated Scenario
        """
        spec = self.spec
        rng = np.random.Generator(np.random.PCG64(spec.seed))
        T = spec.num_periods

        ecs = [self._generate_ec(rng, T) for _ in range(spec.num_ecs)]
        penalties = [self._uniform(rng, spec.unmet_penalty) for _ in range(spec.num_areas)]
        demand = [
            [self._uniform(rng, spec.demand) for _ in range(T)]
            for _ in range(spec.num_areas)
        ]
        delay = [
            [self._uniform(rng, spec.delay) for _ in range(spec.num_ecs)]
            for _ in range(spec.num_areas)
        ]

        max_delay = spec.max_delay
        if spec.force_eligible:
            max_delay = max(max_delay, 2.0 * max(max(row) for row in delay))

        scenario = Scenario(
            num_areas=spec.num_areas,
            num_ecs=spec.num_ecs,
            num_periods=T,
            period_length_hours=spec.period_length_hours,
            demand=demand,
            resource_per_request=spec.resource_per_request,
            service_rate=spec.service_rate,
            unmet_penalty=penalties,
            delay=delay,
            max_delay=max_delay,
            max_utilization=spec.max_utilization,
            ecs=tuple(ecs),
            sellback_ratio=spec.sellback_ratio,
            charge_efficiency=spec.charge_efficiency,
        )
        return scenario.validate()

    def generate_many(self, count: int) -> List[Scenario]:
        """
        Generate scenarios for seeds seed, seed+1, ..., seed+count-1.

        Args:
            count: Number of scenarios to generate

        Returns:
            List of generated scenarios
        """
        return [
            ScenarioGenerator(replace(self.spec, seed=self.spec.seed + k)).generate()
            for k in range(count)
        ]

    def _generate_ec(self, rng: np.random.Generator, periods: int) -> EdgeCloudParams:
        spec = self.spec
        low, high = spec.num_servers
        servers = int(rng.integers(low, high + 1))
        p_idle = self._uniform(rng, spec.p_idle)
        p_peak = self._uniform(rng, spec.p_peak)
        pue = self._uniform(rng, spec.pue)
        price = [self._uniform(rng, spec.price) for _ in range(periods)]
        grid_cap = [self._uniform(rng, spec.grid_cap) for _ in range(periods)]
        renewable = [self._uniform(rng, spec.renewable) for _ in range(periods)]
        cap_max = self._uniform(rng, spec.batt_cap_max)
        cap_min = self._uniform(rng, spec.batt_cap_min)
        charge_max = self._uniform(rng, spec.charge_max)
        discharge_max = self._uniform(rng, spec.discharge_max)
        emission = self._uniform(rng, spec.emission_factor)
        tax = self._uniform(rng, spec.carbon_tax)

        if spec.battery_start == "min":
            start = cap_min
        elif spec.battery_start == "max":
            start = cap_max
        else:
            start = 0.5 * (cap_min + cap_max)

        return EdgeCloudParams(
            max_servers=servers,
            p_idle=p_idle,
            p_peak=p_peak,
            pue=pue,
            price=price,
            grid_cap=grid_cap,
            renewable=renewable,
            batt_cap_max=cap_max,
            batt_cap_min=cap_min,
            batt_init=start,
            charge_max=charge_max,
            discharge_max=discharge_max,
            emission_factor=emission,
            carbon_tax=tax,
        )

    @staticmethod
    def _uniform(rng: np.random.Generator, bounds: Range) -> float:
        low, high = bounds
        return float(low + rng.random() * (high - low))


def generate_scenario(spec: Optional[GenSpec] = None) -> Scenario:
    """
    Convenience function to generate a scenario.

    Args:
        spec: Generator specification (defaults to the reference setting)

    Returns:
        Generated Scenario
    """
    return ScenarioGenerator(spec).generate()
