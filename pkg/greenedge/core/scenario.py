"""

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers

LEGAL NOTICE:
This software is proprietary and confidential. Unauthorized copying,
distribution, modification, or use is strictly prohibited without
explicit written permission from the copyright holder.

Scenario - Domain data model for edge-cloud dispatch problems.

A Scenario holds every exogenous parameter of one planning problem:
the areas (access points), the edge clouds with their energy and compute
parameters, the demand matrix, prices and the delay matrix. Scenarios are
immutable; transformations such as scale_scenario return new objects.
"""

from dataclasses import dataclass, replace
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .validator import ScenarioError, ScenarioValidator

Vector = Tuple[float, ...]
Matrix = Tuple[Tuple[float, ...], ...]


class ScaleFactorError(ScenarioError):
    """Raised when scale factors are invalid."""


def _vector(values: Any) -> Vector:
    return tuple(float(v) for v in values)


def _matrix(rows: Any) -> Matrix:
    return tuple(tuple(float(v) for v in row) for row in rows)


@dataclass(frozen=True)
class EdgeCloudParams:
    """
    Energy and compute parameters of one edge cloud.

    Power is in kW, energy in kWh, prices in money per kWh, emission factor
    in tons CO2 per MWh and carbon tax in money per ton CO2.
    """
    max_servers: int
    p_idle: float
    p_peak: float
    pue: float
    price: Vector
    grid_cap: Vector
    renewable: Vector
    batt_cap_max: float
    batt_cap_min: float
    batt_init: float
    charge_max: float
    discharge_max: float
    emission_factor: float
    carbon_tax: float

    def __post_init__(self):
        object.__setattr__(self, "price", _vector(self.price))
        object.__setattr__(self, "grid_cap", _vector(self.grid_cap))
        object.__setattr__(self, "renewable", _vector(self.renewable))

    @property
    def carbon_charge_per_kwh(self) -> float:
        """Carbon cost of one kWh drawn from the grid (delta * theta / 1000)."""
        return self.carbon_tax * self.emission_factor / 1000.0

    def to_dict(self) -> Dict[str, Any]:
        """Convert to a plain dictionary."""
        return {
            "max_servers": int(self.max_servers),
            "p_idle": self.p_idle,
            "p_peak": self.p_peak,
            "pue": self.pue,
            "price": list(self.price),
            "grid_cap": list(self.grid_cap),
            "renewable": list(self.renewable),
            "batt_cap_max": self.batt_cap_max,
            "batt_cap_min": self.batt_cap_min,
            "batt_init": self.batt_init,
            "charge_max": self.charge_max,
            "discharge_max": self.discharge_max,
            "emission_factor": self.emission_factor,
            "carbon_tax": self.carbon_tax,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "EdgeCloudParams":
        """Create an instance from a plain dictionary."""
        return cls(
            max_servers=int(data["max_servers"]),
            p_idle=float(data["p_idle"]),
            p_peak=float(data["p_peak"]),
            pue=float(data["pue"]),
            price=data["price"],
            grid_cap=data["grid_cap"],
            renewable=data["renewable"],
            batt_cap_max=float(data["batt_cap_max"]),
            batt_cap_min=float(data["batt_cap_min"]),
            batt_init=float(data["batt_init"]),
            charge_max=float(data["charge_max"]),
            discharge_max=float(data["discharge_max"]),
            emission_factor=float(data["emission_factor"]),
            carbon_tax=float(data["carbon_tax"]),
        )


@dataclass(frozen=True)
class Scenario:
    """
    All exogenous parameters of an edge-cloud dispatch problem.

    demand is indexed [area][period] in resource units per period; delay is
    indexed [area][ec] in milliseconds (one way).
    """
    num_areas: int
    num_ecs: int
    num_periods: int
    period_length_hours: float
    demand: Matrix
    resource_per_request: float
    service_rate: float
    unmet_penalty: Vector
    delay: Matrix
    max_delay: float
    max_utilization: float
    ecs: Tuple[EdgeCloudParams, ...]
    sellback_ratio: float
    charge_efficiency: float

    def __post_init__(self):
        object.__setattr__(self, "demand", _matrix(self.demand))
        object.__setattr__(self, "delay", _matrix(self.delay))
        object.__setattr__(self, "unmet_penalty", _vector(self.unmet_penalty))
        object.__setattr__(self, "ecs", tuple(self.ecs))

    def validate(self) -> "Scenario":
        """Raise ScenarioValidationError on the first violated invariant."""
        ScenarioValidator().validate(self).raise_first()
        return self

    def demand_array(self) -> np.ndarray:
        """Demand as an (M, T) array."""
        return np.asarray(self.demand, dtype=float)

    def eligibility_matrix(self) -> np.ndarray:
        """The (M, N) matrix of eligibility bits for the current max_delay."""
        return np.array(
            [[eligibility(d, self.max_delay) for d in row] for row in self.delay],
            dtype=int,
        ).reshape(self.num_areas, self.num_ecs)

    def sellback_price(self, j: int, t: int) -> float:
        """Sell-back price a_j^t = zeta * e_j^t."""
        return self.sellback_ratio * self.ecs[j].price[t]

    def to_dict(self) -> Dict[str, Any]:
        """Convert to a plain dictionary in document field order."""
        return {
            "num_areas": int(self.num_areas),
            "num_ecs": int(self.num_ecs),
            "num_periods": int(self.num_periods),
            "period_length_hours": self.period_length_hours,
            "resource_per_request": self.resource_per_request,
            "service_rate": self.service_rate,
            "max_delay": self.max_delay,
            "max_utilization": self.max_utilization,
            "sellback_ratio": self.sellback_ratio,
            "charge_efficiency": self.charge_efficiency,
            "unmet_penalty": list(self.unmet_penalty),
            "demand": [list(row) for row in self.demand],
            "delay": [list(row) for row in self.delay],
            "ecs": [ec.to_dict() for ec in self.ecs],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Scenario":
        """Create an instance from a plain dictionary (no invariant checks)."""
        return cls(
            num_areas=int(data["num_areas"]),
            num_ecs=int(data["num_ecs"]),
            num_periods=int(data["num_periods"]),
            period_length_hours=float(data["period_length_hours"]),
            demand=data["demand"],
            resource_per_request=float(data["resource_per_request"]),
            service_rate=float(data["service_rate"]),
            unmet_penalty=data["unmet_penalty"],
            delay=data["delay"],
            max_delay=float(data["max_delay"]),
            max_utilization=float(data["max_utilization"]),
            ecs=tuple(EdgeCloudParams.from_dict(ec) for ec in data["ecs"]),
            sellback_ratio=float(data["sellback_ratio"]),
            charge_efficiency=float(data["charge_efficiency"]),
        )


@dataclass(frozen=True)
class ScaleFactors:
    """
    Multipliers applied by scale_scenario.

    psi scales renewable output, xi_e electricity prices, xi_emax the
    battery capacity, xi_dmax the delay threshold and gamma_scale the
    utilization threshold. zeta_override replaces the sell-back ratio.
    """
    psi: float = 1.0
    xi_e: float = 1.0
    xi_emax: float = 1.0
    xi_dmax: float = 1.0
    gamma_scale: float = 1.0
    zeta_override: Optional[float] = None

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        """Raise ScaleFactorError if any multiplier is not positive."""
        for name in ("psi", "xi_e", "xi_emax", "xi_dmax", "gamma_scale"):
            value = getattr(self, name)
            if not value > 0:
                raise ScaleFactorError(f"scale factor {name} must be > 0, got {value}")
        if self.zeta_override is not None and not 0.0 <= self.zeta_override <= 1.0:
            raise ScaleFactorError(f"zeta_override must lie in [0,1], got {self.zeta_override}")

    def combine(self, other: "ScaleFactors") -> "ScaleFactors":
        """Componentwise product; other's zeta_override wins when set."""
        return ScaleFactors(
            psi=self.psi * other.psi,
            xi_e=self.xi_e * other.xi_e,
            xi_emax=self.xi_emax * other.xi_emax,
            xi_dmax=self.xi_dmax * other.xi_dmax,
            gamma_scale=self.gamma_scale * other.gamma_scale,
            zeta_override=(other.zeta_override if other.zeta_override is not None
                           else self.zeta_override),
        )


def eligibility(d_ij: float, d_max: float) -> int:
    """
    Whether area i may be served by EC j.

    Args:
        d_ij: One-way propagation delay in ms
        d_max: Maximum round-trip delay in ms

    Returns:
        1 when the round trip 2*d_ij fits within d_max, else 0
    """
    return 1 if 2.0 * d_ij <= d_max else 0


def _scale_ec(ec: EdgeCloudParams, f: ScaleFactors) -> EdgeCloudParams:
    cap_max = ec.batt_cap_max * f.xi_emax
    return replace(
        ec,
        renewable=tuple(v * f.psi for v in ec.renewable),
        price=tuple(v * f.xi_e for v in ec.price),
        batt_cap_max=cap_max,
        batt_cap_min=min(ec.batt_cap_min, cap_max),
        batt_init=min(ec.batt_init, cap_max),
    )


def scale_scenario(s: Scenario, f: ScaleFactors) -> Scenario:
    """
    Apply scale factors to a scenario.

    Renewables are multiplied by psi and prices by xi_e (the sell-back
    price follows through zeta). The battery capacity is multiplied by
    xi_emax with the minimum level and initial level clamped to it. The
    delay threshold is multiplied by xi_dmax and the utilization threshold
    by gamma_scale, clamped to (0, 1].

    Args:
        s: The scenario to scale (not modified)
        f: The scale factors

    Returns:
        A new Scenario
    """
    f.validate()
    return replace(
        s,
        ecs=tuple(_scale_ec(ec, f) for ec in s.ecs),
        max_delay=s.max_delay * f.xi_dmax,
        max_utilization=min(s.max_utilization * f.gamma_scale, 1.0),
        sellback_ratio=s.sellback_ratio if f.zeta_override is None else f.zeta_override,
    )


def scenario_summary(s: Scenario) -> Dict[str, Any]:
    """Headline figures of a scenario for logging and manifests."""
    demand = s.demand_array()
    return {
        "areas": s.num_areas,
        "ecs": s.num_ecs,
        "periods": s.num_periods,
        "total_requests": float(demand.sum() / s.resource_per_request),
        "peak_requests": float(demand.sum(axis=0).max() / s.resource_per_request),
        "server_capacity": int(sum(ec.max_servers for ec in s.ecs)),
        "eligible_pairs": int(s.eligibility_matrix().sum()),
    }


__all__: List[str] = [
    "EdgeCloudParams",
    "Scenario",
    "ScaleFactors",
    "ScaleFactorError",
    "eligibility",
    "scale_scenario",
    "scenario_summary",
]
