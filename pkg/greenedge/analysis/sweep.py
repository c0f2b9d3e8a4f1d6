"""

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers

LEGAL NOTICE:
This software is proprietary and confidential. Unauthorized copying,
distribution, modification, or use is strictly prohibited without
explicit written permission from the copyright holder.

Sweep - Sensitivity sweeps and variant comparisons.

Features:
- One- and two-parameter grids over scale factors (psi, zeta, xi_e,
  xi_emax, gamma_scale, xi_dmax) and network size (num_areas, num_ecs)
- Dimension sweeps regenerate the scenario from the same seed
- Fixed or re-seeded base scenario per grid point
- Optional process-pool parallelism with rows merged in grid order
- Infeasible and limited solves are recorded, never raised; model and
  solver errors become rows with status "error"
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from ..core.generator import GenSpec, generate_scenario
from ..core.scenario import ScaleFactors, Scenario, scale_scenario
from ..core.validator import ScenarioError
from ..model.builder import M0, ModelOptions, Variant, build_model
from ..model.costs import CostReport, summarize_costs
from ..model.milp import ModelError, Solution
from ..solver.bnb import BnbConfig, SolveStats, solve_milp
from ..solver.lp import SolverError

logger = logging.getLogger(__name__)

SCALE_PARAMS = ("psi", "zeta", "xi_e", "xi_emax", "gamma_scale", "xi_dmax")
DIMENSION_PARAMS = ("num_areas", "num_ecs")
SWEEP_PARAMS = SCALE_PARAMS + DIMENSION_PARAMS
SEED_POLICIES = ("fixed", "reseed")

Point = Tuple[float, Optional[float]]


class SweepError(Exception):
    """Raised when a sweep specification or its base scenario is invalid."""

    def __init__(self, message: str):
        self.message = message
        super().__init__(message)


def _check_grid(param: str, grid: Sequence[float]) -> None:
    if not grid:
        raise SweepError(f"grid for {param} is empty")
    for a, b in zip(grid, grid[1:]):
        if not b > a:
            raise SweepError(f"grid for {param} must be strictly increasing")
    for value in grid:
        if param in DIMENSION_PARAMS:
            if value < 1 or value != int(value):
                raise SweepError(f"{param} values must be positive integers, got {value}")
        elif param == "zeta":
            if not 0.0 <= value <= 1.0:
                raise SweepError(f"zeta values must lie in [0,1], got {value}")
        elif not value > 0:
            raise SweepError(f"{param} values must be > 0, got {value}")


@dataclass
class SweepSpec:
    """
    What to sweep and how to solve each point.

    Attributes:
        base: Base scenario; generated from gen_spec when None
        param: Swept parameter
        grid: Strictly increasing values of param
        variants: Variants solved at every point
        gen_spec: Generator specification, needed for dimension sweeps and
            the "reseed" policy
        seed_policy: "fixed" keeps one base; "reseed" regenerates the base
            with seed gen_spec.seed + point index
        secondary: Optional second parameter (two-parameter grid)
        secondary_grid: Values of the second parameter
        options: Modelling conventions
        config: Branch-and-bound configuration
        jobs: Worker processes (1 solves in-process)
        record_timing: Record wall time; otherwise wall_ms is 0
    """
    base: Optional[Scenario] = None
    param: str = "psi"
    grid: Sequence[float] = (1.0,)
    variants: Sequence[Union[Variant, str]] = (M0,)
    gen_spec: Optional[GenSpec] = None
    seed_policy: str = "fixed"
    secondary: Optional[str] = None
    secondary_grid: Sequence[float] = ()
    options: ModelOptions = field(default_factory=ModelOptions)
    config: BnbConfig = field(default_factory=BnbConfig)
    jobs: int = 1
    record_timing: bool = False

    def __post_init__(self):
        self.grid = tuple(float(v) for v in self.grid)
        self.secondary_grid = tuple(float(v) for v in self.secondary_grid)
        try:
            self.variants = tuple(Variant.parse(v) for v in self.variants)
        except ModelError as e:
            raise SweepError(e.message) from e
        self.validate()

    def validate(self) -> None:
        """
        Raises:
            SweepError: On the first invalid setting
        """
        if self.param not in SWEEP_PARAMS:
            raise SweepError(f"unknown sweep parameter {self.param!r}; expected one of {SWEEP_PARAMS}")
        _check_grid(self.param, self.grid)
        if self.secondary is not None:
            if self.secondary not in SWEEP_PARAMS:
                raise SweepError(f"unknown sweep parameter {self.secondary!r}")
            if self.secondary == self.param:
                raise SweepError("the two sweep parameters must differ")
            _check_grid(self.secondary, self.secondary_grid)
        elif self.secondary_grid:
            raise SweepError("secondary_grid given without a secondary parameter")
        if not self.variants:
            raise SweepError("no variants to run")
        if self.seed_policy not in SEED_POLICIES:
            raise SweepError(f"seed_policy must be one of {SEED_POLICIES}")
        if self.base is None and self.gen_spec is None:
            raise SweepError("a base scenario or a generator specification is required")
        if (self.regenerates or self.seed_policy == "reseed") and self.gen_spec is None:
            raise SweepError("dimension sweeps and the reseed policy need a generator seed")
        if self.jobs < 1:
            raise SweepError("jobs must be >= 1")

    @property
    def params(self) -> List[str]:
        return [self.param] + ([self.secondary] if self.secondary else [])

    @property
    def regenerates(self) -> bool:
        return any(p in DIMENSION_PARAMS for p in self.params)

    def points(self) -> List[Point]:
        """Grid points in row order (primary major)."""
        if self.secondary is None:
            return [(v, None) for v in self.grid]
        return [(v, w) for v in self.grid for w in self.secondary_grid]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "param": self.param,
            "grid": list(self.grid),
            "secondary": self.secondary,
            "secondary_grid": list(self.secondary_grid),
            "variants": [v.name for v in self.variants],
            "seed": self.gen_spec.seed if self.gen_spec else None,
            "seed_policy": self.seed_policy,
            "options": self.options.to_dict(),
            "config": self.config.to_dict(),
            "jobs": self.jobs,
            "record_timing": self.record_timing,
        }


@dataclass
class SweepRow:
    """One solved (grid point, variant) pair; cost fields are None without values."""
    param: float
    variant: str
    status: str
    param2: Optional[float] = None
    total_cost: Optional[float] = None
    unmet_cost: Optional[float] = None
    net_electricity: Optional[float] = None
    carbon_cost: Optional[float] = None
    revenue: Optional[float] = None
    emissions_tons: Optional[float] = None
    curtailed_kwh: Optional[float] = None
    unmet_requests: Optional[float] = None
    nodes: int = 0
    wall_ms: float = 0.0
    root_bound: Optional[float] = None
    gap: Optional[float] = None
    costs: Optional[CostReport] = field(default=None, repr=False, compare=False)

    @classmethod
    def from_solve(cls, param: float, param2: Optional[float], variant: Variant,
                   solution: Solution, stats: SolveStats, costs: Optional[CostReport],
                   record_timing: bool) -> "SweepRow":
        row = cls(
            param=param,
            param2=param2,
            variant=variant.name,
            status=solution.status.value,
            nodes=stats.nodes_explored,
            wall_ms=stats.wall_time * 1000.0 if record_timing else 0.0,
            root_bound=stats.root_bound,
            gap=stats.final_gap if math.isfinite(stats.final_gap) else None,
            costs=costs,
        )
        if costs is not None:
            row.total_cost = costs.total
            row.unmet_cost = costs.unmet_cost
            row.net_electricity = costs.net_electricity
            row.carbon_cost = costs.carbon_cost
            row.revenue = costs.sellback_revenue
            row.emissions_tons = costs.total_emissions_tons
            row.curtailed_kwh = costs.total_curtailed_kwh
            row.unmet_requests = costs.total_unmet_requests
        return row

    @property
    def solved(self) -> bool:
        return self.total_cost is not None


@dataclass
class SweepTable:
    """Rows ordered by grid point, then variant."""
    param: str
    rows: List[SweepRow] = field(default_factory=list)
    param2: Optional[str] = None

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def two_parameter(self) -> bool:
        return self.param2 is not None

    def for_variant(self, variant: Union[Variant, str]) -> List[SweepRow]:
        name = Variant.parse(variant).name
        return [r for r in self.rows if r.variant == name]

    def column(self, name: str, variant: Optional[Union[Variant, str]] = None) -> List[Any]:
        rows = self.rows if variant is None else self.for_variant(variant)
        return [getattr(r, name) for r in rows]

    def row(self, variant: Union[Variant, str], param: float,
            param2: Optional[float] = None) -> SweepRow:
        for r in self.for_variant(variant):
            if math.isclose(r.param, param) and (param2 is None or math.isclose(r.param2, param2)):
                return r
        raise KeyError(f"no row for {variant} at {param}")


@dataclass
class SolveOutcome:
    """Result of solving one scenario under one variant."""
    scenario: Scenario
    variant: Variant
    solution: Solution
    stats: SolveStats
    costs: Optional[CostReport]


def solve_scenario(s: Scenario, variant: Union[Variant, str] = M0,
                   options: Optional[ModelOptions] = None,
                   config: Optional[BnbConfig] = None) -> SolveOutcome:
    """
    Build and solve one variant of a scenario.

    Returns:
        SolveOutcome; costs is None when the solve produced no values
    """
    variant = Variant.parse(variant)
    model = build_model(s, variant, options)
    solution, stats = solve_milp(model, config)
    costs = summarize_costs(s, solution) if solution.has_values else None
    return SolveOutcome(s, variant, solution, stats, costs)


def _scale_factors(assignments: Dict[str, float]) -> ScaleFactors:
    kwargs: Dict[str, Any] = {}
    for name, value in assignments.items():
        if name == "zeta":
            kwargs["zeta_override"] = value
        elif name in SCALE_PARAMS:
            kwargs[name] = value
    return ScaleFactors(**kwargs)


def _resolve_base(spec: SweepSpec) -> Scenario:
    base = spec.base if spec.base is not None else generate_scenario(spec.gen_spec)
    try:
        return base.validate()
    except ScenarioError as e:
        raise SweepError(f"invalid base scenario: {e.message}") from e


def _base_gen_spec(spec: SweepSpec, base: Scenario) -> GenSpec:
    gen = spec.gen_spec
    assert gen is not None
    if spec.base is None:
        return gen
    return replace(gen, num_areas=base.num_areas, num_ecs=base.num_ecs,
                   num_periods=base.num_periods)


def scenario_for_point(spec: SweepSpec, base: Scenario, index: int, point: Point) -> Scenario:
    """
    Scenario solved at one grid point.

    Args:
        spec: The sweep
        base: Resolved base scenario
        index: Position of the point in spec.points()
        point: (value, secondary value)
    """
    assignments = {spec.param: point[0]}
    if spec.secondary is not None and point[1] is not None:
        assignments[spec.secondary] = point[1]

    scenario = base
    dims = {k: int(v) for k, v in assignments.items() if k in DIMENSION_PARAMS}
    if dims or spec.seed_policy == "reseed":
        gen = _base_gen_spec(spec, base)
        seed = gen.seed + index if spec.seed_policy == "reseed" else gen.seed
        scenario = generate_scenario(replace(gen, seed=seed, **dims))
    return scale_scenario(scenario, _scale_factors(assignments))


@dataclass(frozen=True)
class _Task:
    point: Point
    scenario: Scenario
    variant: Variant
    options: ModelOptions
    config: BnbConfig
    record_timing: bool


def _solve_point(task: _Task) -> SweepRow:
    try:
        outcome = solve_scenario(task.scenario, task.variant, task.options, task.config)
    except (ModelError, SolverError) as e:
        logger.error("point %s variant %s failed: %s", task.point, task.variant, e.message)
        return SweepRow(param=task.point[0], param2=task.point[1], variant=task.variant.name,
                        status="error")
    if not outcome.solution.is_optimal:
        logger.warning("point %s variant %s ended %s", task.point, task.variant,
                       outcome.solution.status.value)
    return SweepRow.from_solve(task.point[0], task.point[1], task.variant, outcome.solution,
                               outcome.stats, outcome.costs, task.record_timing)


def run_sweep(spec: SweepSpec) -> SweepTable:
    """
    Solve every (grid point, variant) pair of a sweep.

    Args:
        spec: The sweep

    Returns:
        SweepTable with one row per pair, ordered by grid then variant

    Raises:
        SweepError: If the base scenario is invalid
    """
    spec.validate()
    base = _resolve_base(spec)
    tasks = []
    for index, point in enumerate(spec.points()):
        scenario = scenario_for_point(spec, base, index, point)
        for variant in spec.variants:
            tasks.append(_Task(point, scenario, variant, spec.options, spec.config,
                               spec.record_timing))
    logger.info("sweep %s over %d points x %d variants (%d jobs)",
                "x".join(spec.params), len(spec.points()), len(spec.variants), spec.jobs)

    if spec.jobs == 1:
        rows = [_solve_point(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            rows = list(pool.map(_solve_point, tasks))
    return SweepTable(param=spec.param, rows=rows, param2=spec.secondary)


def compare_variants(
    s: Scenario,
    variants: Sequence[Union[Variant, str]],
    options: Optional[ModelOptions] = None,
    config: Optional[BnbConfig] = None,
    jobs: int = 1,
    record_timing: bool = False,
) -> SweepTable:
    """
    Solve several variants on one scenario.

    The table's param column holds the scenario's sell-back ratio.

    Raises:
        SweepError: If variants is empty or the scenario is invalid
    """
    if not variants:
        raise SweepError("no variants to compare")
    spec = SweepSpec(
        base=s,
        param="zeta",
        grid=(s.sellback_ratio,),
        variants=variants,
        options=options or ModelOptions(),
        config=config or BnbConfig(),
        jobs=jobs,
        record_timing=record_timing,
    )
    return run_sweep(spec)
