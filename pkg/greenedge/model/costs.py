"""
Cost Report - Decomposes a dispatch into its cost, revenue and emission terms.

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers

Money terms and emissions follow the objective's convention: one period's
grid draw in kW is charged as that many kWh. Physical energy totals
(curtailed, grid, renewable used, battery throughput) multiply by the
period length.
"""

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List

from ..core.scenario import Scenario
from .builder import var_name
from .milp import Solution, SolutionError, SolutionStatus

logger = logging.getLogger(__name__)


@dataclass
class CostReport:
    """Cost decomposition of one solution."""
    unmet_cost: float = 0.0
    electricity_cost: float = 0.0
    sellback_revenue: float = 0.0
    net_electricity: float = 0.0
    carbon_cost: float = 0.0
    total: float = 0.0
    total_emissions_tons: float = 0.0
    total_unmet_requests: float = 0.0
    total_curtailed_kwh: float = 0.0
    grid_energy_kwh: float = 0.0
    renewable_used_kwh: float = 0.0
    renewable_utilization: float = 0.0
    battery_throughput_kwh: float = 0.0
    ec_emissions_tons: List[float] = field(default_factory=list)
    objective_mismatch: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CostReport":
        known = {k: v for k, v in data.items() if k in cls.__dataclass_fields__}
        if "ec_emissions_tons" in known:
            known["ec_emissions_tons"] = [float(v) for v in known["ec_emissions_tons"]]
        return cls(**known)


def _summarize(s: Scenario, value: Callable[[str], float]) -> CostReport:
    M, N, T = s.num_areas, s.num_ecs, s.num_periods
    dt = s.period_length_hours
    report = CostReport()

    for i in range(M):
        for t in range(T):
            q = value(var_name("q", i, t))
            report.total_unmet_requests += q
            report.unmet_cost += s.unmet_penalty[i] * q

    available = 0.0
    for j, ec in enumerate(s.ecs):
        ec_tons = 0.0
        for t in range(T):
            pg = value(var_name("PG", j, t))
            ps = value(var_name("PS", j, t))
            pw = value(var_name("PW", j, t))
            report.electricity_cost += ec.price[t] * pg
            report.sellback_revenue += s.sellback_price(j, t) * ps
            report.carbon_cost += ec.carbon_charge_per_kwh * pg
            ec_tons += ec.emission_factor * pg / 1000.0
            report.grid_energy_kwh += pg * dt
            report.total_curtailed_kwh += pw * dt
            report.renewable_used_kwh += (ec.renewable[t] - pw) * dt
            report.battery_throughput_kwh += (
                value(var_name("PC", j, t)) + value(var_name("PD", j, t))
            ) * dt
            available += ec.renewable[t] * dt
        report.ec_emissions_tons.append(ec_tons)

    report.total_emissions_tons = sum(report.ec_emissions_tons)
    report.net_electricity = report.electricity_cost - report.sellback_revenue
    report.total = report.unmet_cost + report.net_electricity + report.carbon_cost
    report.renewable_utilization = report.renewable_used_kwh / available if available > 0 else 0.0
    return report


def summarize_costs(s: Scenario, sol: Solution) -> CostReport:
    """
    Cost decomposition of any solution carrying values (incumbents included).

    Raises:
        SolutionError: If the solution has no values
    """
    if not sol.has_values:
        raise SolutionError(f"solution with status {sol.status.value} carries no values")
    return _summarize(s, sol.value)


def cost_report(s: Scenario, sol: Solution) -> CostReport:
    """
    Cost decomposition of an optimal solution.

    Args:
        s: The scenario the solution was computed for
        sol: An optimal Solution

    Returns:
        CostReport whose total matches sol.objective; any difference is
        kept in objective_mismatch

    Raises:
        SolutionError: If the solution is not optimal
    """
    if sol.status != SolutionStatus.OPTIMAL:
        raise SolutionError(f"cost report needs an optimal solution, got {sol.status.value}")
    report = summarize_costs(s, sol)
    if not math.isnan(sol.objective):
        report.objective_mismatch = report.total - sol.objective
        scale = max(1.0, abs(sol.objective))
        if abs(report.objective_mismatch) > 1e-9 * scale:
            logger.warning("cost total %.12g differs from objective %.12g",
                           report.total, sol.objective)
    return report
