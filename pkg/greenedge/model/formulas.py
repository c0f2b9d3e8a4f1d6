"""
Formulas - Closed-form quantities of the edge energy model.

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers
"""

from typing import Any

from .milp import ModelError

LOAD_TERM_MODES = ("elastic", "printed")


def utilization(request_load: float, service_rate: float, active_servers: float) -> float:
    """
    Average server utilization of an EC in one period.

    Args:
        request_load: Requests allocated to the EC
        service_rate: Requests one server handles per period
        active_servers: Number of active servers

    Returns:
        request_load / (service_rate * active_servers); 0 for an idle EC
        with no servers

    Raises:
        ModelError: If load is positive while no server is active
    """
    if request_load < 0 or service_rate <= 0 or active_servers < 0:
        raise ModelError(
            f"invalid utilization inputs: load={request_load}, rho={service_rate}, "
            f"servers={active_servers}"
        )
    if active_servers == 0:
        if request_load == 0:
            return 0.0
        raise ModelError(f"load {request_load} assigned to an EC with zero active servers")
    return request_load / (service_rate * active_servers)


def server_power_coefficient(p: Any) -> float:
    """Power per active server independent of load: P_idle + (pue - 1) * P_peak."""
    return p.p_idle + (p.pue - 1.0) * p.p_peak


def load_power_coefficient(p: Any, service_rate: float, load_term: str = "elastic") -> float:
    """
    Power per allocated request.

    The elastic form (P_peak - P_idle) / rho grows with load; the printed
    form uses (P_idle - P_peak) / rho.
    """
    if load_term not in LOAD_TERM_MODES:
        raise ModelError(f"load_term must be one of {LOAD_TERM_MODES}, got {load_term!r}")
    spread = p.p_peak - p.p_idle if load_term == "elastic" else p.p_idle - p.p_peak
    return spread / service_rate


def power_demand(
    active_servers: float,
    request_load: float,
    p: Any,
    service_rate: float,
    load_term: str = "elastic",
) -> float:
    """
    Total power drawn by an EC in kW.

    Args:
        active_servers: Number of active servers c
        request_load: Requests allocated to the EC
        p: EdgeCloudParams of the EC
        service_rate: Requests one server handles per period
        load_term: "elastic" (default) or "printed" sign of the load term

    Returns:
        c * (P_idle + (pue - 1) * P_peak) + (P_peak - P_idle) * load / rho
    """
    if active_servers < 0 or request_load < 0:
        raise ModelError("active_servers and request_load must be >= 0")
    return (active_servers * server_power_coefficient(p)
            + load_power_coefficient(p, service_rate, load_term) * request_load)


def battery_step(level: float, charge: float, discharge: float, efficiency: float, dt: float) -> float:
    """
    Battery level after one period.

    Returns:
        level + dt * (efficiency * charge - discharge / efficiency)
    """
    if not 0.0 < efficiency <= 1.0 or dt <= 0:
        raise ModelError(f"invalid battery step: efficiency={efficiency}, dt={dt}")
    return level + dt * (efficiency * charge - discharge / efficiency)
