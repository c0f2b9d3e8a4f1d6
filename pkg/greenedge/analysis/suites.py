"""
Experiment Suites - Named sweep configurations for the standard result sets.

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ..core.generator import GenSpec
from ..model.builder import M0, M1, M2, M3, ModelOptions, Variant
from ..solver.bnb import BnbConfig
from .sweep import SweepError, SweepSpec

UNIT_GRID = (0.5, 1.0, 1.5, 2.0)
ZETA_GRID = (0.0, 0.2, 0.4, 0.6, 0.8, 1.0)
ALL_VARIANTS = (M0, M1, M2, M3)


@dataclass(frozen=True)
class ExperimentSuite:
    """A named sweep: parameters, grids and variants."""
    name: str
    description: str
    param: str
    grid: Tuple[float, ...]
    variants: Tuple[Variant, ...] = (M0,)
    secondary: Optional[str] = None
    secondary_grid: Tuple[float, ...] = ()

    def sweep_spec(
        self,
        seed: int,
        gen_spec: Optional[GenSpec] = None,
        options: Optional[ModelOptions] = None,
        config: Optional[BnbConfig] = None,
        jobs: int = 1,
        record_timing: bool = False,
    ) -> SweepSpec:
        """SweepSpec of this suite on the default-setting scenario of a seed."""
        gen = (gen_spec or GenSpec()).with_overrides(seed=seed)
        return SweepSpec(
            param=self.param,
            grid=self.grid,
            variants=self.variants,
            gen_spec=gen,
            secondary=self.secondary,
            secondary_grid=self.secondary_grid,
            options=options or ModelOptions(),
            config=config or BnbConfig(),
            jobs=jobs,
            record_timing=record_timing,
        )


SUITES: Dict[str, ExperimentSuite] = {
    s.name: s
    for s in (
        ExperimentSuite("renewable", "renewable output against electricity price",
                        "psi", UNIT_GRID, secondary="xi_e", secondary_grid=UNIT_GRID),
        ExperimentSuite("battery", "electricity price against battery capacity",
                        "xi_e", UNIT_GRID, secondary="xi_emax", secondary_grid=UNIT_GRID),
        ExperimentSuite("sellback-renewable", "sell-back ratio against renewable output",
                        "zeta", ZETA_GRID, secondary="psi", secondary_grid=UNIT_GRID),
        ExperimentSuite("sellback-battery", "sell-back ratio against battery capacity",
                        "zeta", ZETA_GRID, secondary="xi_emax", secondary_grid=UNIT_GRID),
        ExperimentSuite("qos", "utilization threshold against delay threshold",
                        "gamma_scale", (0.4, 0.6, 0.8, 1.0),
                        secondary="xi_dmax", secondary_grid=(0.25, 0.5, 0.75, 1.0)),
        ExperimentSuite("network", "number of areas against number of edge clouds",
                        "num_areas", (5, 10, 15, 20),
                        secondary="num_ecs", secondary_grid=(4, 8, 12, 16)),
        ExperimentSuite("variants-zeta", "M0-M3 over the sell-back ratio",
                        "zeta", ZETA_GRID, ALL_VARIANTS),
        ExperimentSuite("variants-price", "M0-M3 over electricity price",
                        "xi_e", UNIT_GRID, ALL_VARIANTS),
        ExperimentSuite("variants-battery", "M0-M3 over battery capacity",
                        "xi_emax", UNIT_GRID, ALL_VARIANTS),
    )
}


def get_suite(name: str) -> ExperimentSuite:
    """
    Raises:
        SweepError: If no suite has that name
    """
    try:
        return SUITES[name]
    except KeyError:
        raise SweepError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}") from None


def suite_names() -> List[str]:
    return list(SUITES)
