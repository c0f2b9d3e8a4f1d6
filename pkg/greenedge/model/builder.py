"""

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers

LEGAL NOTICE:
This software is proprietary and confidential. Unauthorized copying,
distribution, modification, or use is strictly prohibited without
explicit written permission from the copyright holder.

Model Builder - Assembles the allocation and dispatch MILP from a Scenario.

Variables (1-based names, catalog order):
    x[i][j][t]   requests of area i served by EC j         (c) eligibility bound
    q[i][t]      unmet requests of area i                  (b)
    c[j][t]      active servers, integer                   (a)
    PG[j][t]     grid purchase, kW                         (f)
    PC[j][t]     battery charge, kW                        (h)
    PD[j][t]     battery discharge, kW                     (h)
    PS[j][t]     sell-back, kW                             (k)
    PU[j][t]     power demand, kW                          (e)
    E[j][t]      battery level, kWh, t = 1..T+1            (j)
    PW[j][t]     curtailed renewable, kW                   (g)

Rows (catalog order):
    alloc[i][t]  alpha * (sum_j x + q) = lambda            (b)
    util[j][t]   sum_i x - gamma * rho * c <= 0            (d)
    power[j][t]  PU - k * c - s * sum_i x = 0              (e)
    balance[j][t] PG + PD - PW - PU - PC - PS = -PR        (g)
    dyn[j][t]    E[t+1] - E[t] - dT*eta*PC + dT/eta*PD = 0 (i), battery only
"""

import logging
import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional, Union

from ..core.scenario import Scenario
from .formulas import LOAD_TERM_MODES, load_power_coefficient, server_power_coefficient
from .milp import ConstraintFamily, DimensionMismatchError, MilpModel, ModelError

logger = logging.getLogger(__name__)

ALLOCATION_BOUND_MODES = ("scaled", "printed")

F = ConstraintFamily


@dataclass(frozen=True)
class Variant:
    """Model configuration toggling battery storage and sell-back."""
    name: str
    battery_enabled: bool
    sellback_enabled: bool

    @classmethod
    def parse(cls, value: Union[str, "Variant"]) -> "Variant":
        """Look up a variant by name (M0..M3, case-insensitive)."""
        if isinstance(value, Variant):
            return value
        key = str(value).strip().upper()
        if key not in VARIANTS:
            raise ModelError(f"unknown variant {value!r}; expected one of {', '.join(VARIANTS)}")
        return VARIANTS[key]

    @classmethod
    def parse_list(cls, text: str) -> List["Variant"]:
        """Parse a comma-separated variant list such as "M0,M2"."""
        names = [part for part in (p.strip() for p in text.split(",")) if part]
        if not names:
            raise ModelError("empty variant list")
        return [cls.parse(n) for n in names]

    def __str__(self) -> str:
        return self.name


M0 = Variant("M0", battery_enabled=True, sellback_enabled=True)
M1 = Variant("M1", battery_enabled=False, sellback_enabled=False)
M2 = Variant("M2", battery_enabled=True, sellback_enabled=False)
M3 = Variant("M3", battery_enabled=False, sellback_enabled=True)

VARIANTS: Dict[str, Variant] = {v.name: v for v in (M0, M1, M2, M3)}


@dataclass(frozen=True)
class ModelOptions:
    """
    Switchable modelling conventions.

    Attributes:
        load_term: "elastic" makes power grow with load; "printed" uses the
            opposite sign on the load term
        allocation_bound: "scaled" bounds x by b * lambda / alpha (requests);
            "printed" bounds it by b * lambda
        curtailment: Allow spilling renewable output; False fixes PW to 0
        bound_final_level: Apply the battery box to the post-horizon level
    """
    load_term: str = "elastic"
    allocation_bound: str = "scaled"
    curtailment: bool = True
    bound_final_level: bool = True

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.load_term not in LOAD_TERM_MODES:
            raise ModelError(f"load_term must be one of {LOAD_TERM_MODES}, got {self.load_term!r}")
        if self.allocation_bound not in ALLOCATION_BOUND_MODES:
            raise ModelError(
                f"allocation_bound must be one of {ALLOCATION_BOUND_MODES}, "
                f"got {self.allocation_bound!r}"
            )

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Optional[Dict[str, Any]]) -> "ModelOptions":
        return cls(**(data or {}))


def var_name(kind: str, *indices: int) -> str:
    """Catalog name from 0-based indices, e.g. var_name("x", 0, 1, 2) -> "x[1][2][3]"."""
    return kind + "".join(f"[{k + 1}]" for k in indices)


class ModelBuilder:
    """
    Builds the MILP for one scenario and variant.

    Example:
        model = ModelBuilder(scenario, M0).build()
    """

    def __init__(self, scenario: Scenario, variant: Variant = M0,
                 options: Optional[ModelOptions] = None):
        self.scenario = scenario
        self.variant = Variant.parse(variant)
        self.options = options or ModelOptions()
        self.options.validate()

    def build(self) -> MilpModel:
        """
        Assemble variables, bounds, objective and rows.

        Raises:
            DimensionMismatchError: If the scenario's matrices disagree with its dimensions
        """
        self._check_dimensions()
        s = self.scenario
        model = MilpModel(f"greenedge-{self.variant.name}")
        self._add_variables(model)
        self._add_rows(model)
        logger.debug(
            "built %s: %d variables (%d integer), %d rows for M=%d N=%d T=%d",
            model.name, model.num_variables, model.num_integers, model.num_rows,
            s.num_areas, s.num_ecs, s.num_periods,
        )
        return model

    def _check_dimensions(self) -> None:
        s = self.scenario
        M, N, T = s.num_areas, s.num_ecs, s.num_periods
        if len(s.demand) != M or any(len(row) != T for row in s.demand):
            raise DimensionMismatchError(f"demand must be {M}x{T}")
        if len(s.delay) != M or any(len(row) != N for row in s.delay):
            raise DimensionMismatchError(f"delay must be {M}x{N}")
        if len(s.unmet_penalty) != M:
            raise DimensionMismatchError(f"unmet_penalty must have {M} entries")
        if len(s.ecs) != N:
            raise DimensionMismatchError(f"ecs must have {N} entries")
        for j, ec in enumerate(s.ecs):
            for name in ("price", "grid_cap", "renewable"):
                if len(getattr(ec, name)) != T:
                    raise DimensionMismatchError(f"ecs[{j}].{name} must have {T} entries")

    def _add_variables(self, model: MilpModel) -> None:
        s, v, opts = self.scenario, self.variant, self.options
        M, N, T = s.num_areas, s.num_ecs, s.num_periods
        alpha = s.resource_per_request
        eligible = s.eligibility_matrix()

        for i in range(M):
            for j in range(N):
                for t in range(T):
                    cap = eligible[i, j] * s.demand[i][t]
                    if opts.allocation_bound == "scaled":
                        cap /= alpha
                    model.add_variable(var_name("x", i, j, t), upper=cap, family=F.ELIGIBILITY)
        for i in range(M):
            for t in range(T):
                model.add_variable(var_name("q", i, t), cost=s.unmet_penalty[i],
                                   family=F.ALLOCATION)
        for j, ec in enumerate(s.ecs):
            for t in range(T):
                model.add_variable(var_name("c", j, t), upper=float(ec.max_servers),
                                   integer=True, family=F.SERVERS)

        for j, ec in enumerate(s.ecs):
            for t in range(T):
                model.add_variable(var_name("PG", j, t), upper=ec.grid_cap[t],
                                   cost=ec.price[t] + ec.carbon_charge_per_kwh, family=F.GRID)
        for j, ec in enumerate(s.ecs):
            for t in range(T):
                model.add_variable(var_name("PC", j, t),
                                   upper=ec.charge_max if v.battery_enabled else 0.0,
                                   family=F.BATTERY_RATE)
        for j, ec in enumerate(s.ecs):
            for t in range(T):
                model.add_variable(var_name("PD", j, t),
                                   upper=ec.discharge_max if v.battery_enabled else 0.0,
                                   family=F.BATTERY_RATE)
        for j in range(N):
            for t in range(T):
                model.add_variable(var_name("PS", j, t),
                                   upper=math.inf if v.sellback_enabled else 0.0,
                                   cost=-s.sellback_price(j, t), family=F.SELLBACK)
        for j in range(N):
            for t in range(T):
                model.add_variable(var_name("PU", j, t), family=F.POWER)

        for j, ec in enumerate(s.ecs):
            for t in range(T + 1):
                if t == 0 or not v.battery_enabled:
                    lo = hi = ec.batt_init
                elif t == T and not opts.bound_final_level:
                    lo, hi = 0.0, math.inf
                else:
                    lo, hi = ec.batt_cap_min, ec.batt_cap_max
                model.add_variable(var_name("E", j, t), lower=lo, upper=hi, family=F.LEVEL)

        for j, ec in enumerate(s.ecs):
            for t in range(T):
                model.add_variable(var_name("PW", j, t),
                                   upper=ec.renewable[t] if opts.curtailment else 0.0,
                                   family=F.BALANCE)

    def _add_rows(self, model: MilpModel) -> None:
        s, v, opts = self.scenario, self.variant, self.options
        M, N, T = s.num_areas, s.num_ecs, s.num_periods
        alpha, rho = s.resource_per_request, s.service_rate
        idx = model.index_of

        for i in range(M):
            for t in range(T):
                coefs = {idx(var_name("x", i, j, t)): alpha for j in range(N)}
                coefs[idx(var_name("q", i, t))] = alpha
                model.add_row(var_name("alloc", i, t), coefs, "=", s.demand[i][t],
                              family=F.ALLOCATION)

        for j in range(N):
            for t in range(T):
                coefs = {idx(var_name("x", i, j, t)): 1.0 for i in range(M)}
                coefs[idx(var_name("c", j, t))] = -s.max_utilization * rho
                model.add_row(var_name("util", j, t), coefs, "<=", 0.0, family=F.UTILIZATION)

        for j, ec in enumerate(s.ecs):
            k = server_power_coefficient(ec)
            slope = load_power_coefficient(ec, rho, opts.load_term)
            for t in range(T):
                coefs: Dict[int, float] = {idx(var_name("PU", j, t)): 1.0,
                                           idx(var_name("c", j, t)): -k}
                for i in range(M):
                    coefs[idx(var_name("x", i, j, t))] = -slope
                model.add_row(var_name("power", j, t), coefs, "=", 0.0, family=F.POWER)

        for j, ec in enumerate(s.ecs):
            for t in range(T):
                coefs = {
                    idx(var_name("PG", j, t)): 1.0,
                    idx(var_name("PD", j, t)): 1.0,
                    idx(var_name("PW", j, t)): -1.0,
                    idx(var_name("PU", j, t)): -1.0,
                    idx(var_name("PC", j, t)): -1.0,
                    idx(var_name("PS", j, t)): -1.0,
                }
                model.add_row(var_name("balance", j, t), coefs, "=", -ec.renewable[t],
                              family=F.BALANCE)

        if not v.battery_enabled:
            return
        dt, eta = s.period_length_hours, s.charge_efficiency
        for j in range(N):
            for t in range(T):
                coefs = {
                    idx(var_name("E", j, t + 1)): 1.0,
                    idx(var_name("E", j, t)): -1.0,
                    idx(var_name("PC", j, t)): -dt * eta,
                    idx(var_name("PD", j, t)): dt / eta,
                }
                model.add_row(var_name("dyn", j, t), coefs, "=", 0.0, family=F.DYNAMICS)


def build_model(s: Scenario, v: Union[Variant, str] = M0,
                options: Optional[ModelOptions] = None) -> MilpModel:
    """
    Convenience function to build the MILP of a scenario.

    Args:
        s: Scenario to model
        v: Variant (or its name)
        options: Modelling conventions (defaults apply when omitted)

    Returns:
        The assembled MilpModel
    """
    return ModelBuilder(s, Variant.parse(v), options).build()
