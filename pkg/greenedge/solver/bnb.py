"""

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers

LEGAL NOTICE:
This software is proprietary and confidential. Unauthorized copying,
distribution, modification, or use is strictly prohibited without
explicit written permission from the copyright holder.

Branch and Bound - Integer search over the LP relaxation.

Features:
- LP relaxations solved by the bounded simplex, children warm-started
  from the parent's basis (only bounds change between them)
- Most-fractional branching, ties to the lowest variable index
- Depth-first dive until the search reaches its first integral leaf, then
  best-bound order with FIFO tie-break
- Round-and-fix heuristic at the root to seed the incumbent; it tightens
  the cutoff but does not end the dive
- Reduced-cost tightening of integer bounds before each branching, valid
  for the node's whole subtree
- One INFO log line per evaluated node on the "greenedge.solver.bnb" logger

The node limit is checked before each branching; one branching evaluates
both children.
"""

import heapq
import logging
import math
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..model.milp import MilpModel, Solution, SolutionStatus
from .lp import (
    LpBasis,
    LpProblem,
    LpResult,
    LpStatus,
    SimplexSettings,
    SolverError,
    VarStatus,
    factor_basis,
    solve_lp,
)

logger = logging.getLogger(__name__)

BRANCH_RULES = ("most-fractional",)
NODE_ORDERS = ("best-bound",)


@dataclass
class BnbConfig:
    """Tolerances, limits and search rules of branch and bound."""
    integrality_tol: float = 1e-6
    relative_gap_tol: float = 1e-6
    node_limit: int = 100000
    feasibility_tol: float = 1e-7
    optimality_tol: float = 1e-7
    branch_rule: str = "most-fractional"
    node_order: str = "best-bound"
    dive: bool = True
    heuristic: bool = True
    iteration_limit: int = 100000

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        """
        Raises:
            SolverError: If a tolerance is not positive or a rule is unknown
        """
        for name in ("integrality_tol", "relative_gap_tol", "feasibility_tol", "optimality_tol"):
            if not getattr(self, name) > 0:
                raise SolverError(f"{name} must be > 0")
        if self.node_limit < 1:
            raise SolverError("node_limit must be >= 1")
        if self.branch_rule not in BRANCH_RULES:
            raise SolverError(f"unknown branch rule {self.branch_rule!r}")
        if self.node_order not in NODE_ORDERS:
            raise SolverError(f"unknown node order {self.node_order!r}")

    def simplex_settings(self) -> SimplexSettings:
        return SimplexSettings(
            feasibility_tol=self.feasibility_tol,
            optimality_tol=self.optimality_tol,
            iteration_limit=self.iteration_limit,
        )

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class SolveStats:
    """Counters and bounds of one branch-and-bound run."""
    nodes_explored: int = 0
    simplex_iterations: int = 0
    wall_time: float = 0.0
    best_bound: float = -math.inf
    incumbent_objective: float = math.inf
    final_gap: float = math.inf
    root_bound: Optional[float] = None
    lp_solves: int = 0
    dive_nodes: int = 0
    bounds_tightened: int = 0
    bound_history: List[float] = field(default_factory=list)

    def to_dict(self, include_history: bool = False) -> Dict[str, Any]:
        data = asdict(self)
        if not include_history:
            data.pop("bound_history")
        for key in ("best_bound", "incumbent_objective", "final_gap", "root_bound"):
            value = data[key]
            if value is not None and not math.isfinite(value):
                data[key] = None
        return data


@dataclass
class _Node:
    id: int
    depth: int
    bound: float
    lower: np.ndarray
    upper: np.ndarray
    x: np.ndarray
    basis: Optional[LpBasis]
    reduced: Optional[np.ndarray] = None


def _fractionality(x: np.ndarray, int_idx: np.ndarray) -> np.ndarray:
    frac = x[int_idx] - np.floor(x[int_idx])
    return np.minimum(frac, 1.0 - frac)


def _round_integers(x: np.ndarray, int_idx: np.ndarray) -> np.ndarray:
    values = x.copy()
    values[int_idx] = np.round(values[int_idx])
    return values


class BranchAndBound:
    """
    Branch and bound over a MilpModel.

    Example:
        solution, stats = BranchAndBound(model, BnbConfig()).solve()
    """

    def __init__(self, model: MilpModel, config: Optional[BnbConfig] = None):
        self.model = model
        self.config = config or BnbConfig()
        self.config.validate()
        self.settings = self.config.simplex_settings()
        self.problem: LpProblem = model.to_lp()
        self.int_idx = np.flatnonzero(model.integer_mask())
        self.cost = self.problem.objective

        self.stats = SolveStats()
        self.incumbent: Optional[np.ndarray] = None
        self.incumbent_obj = math.inf
        self.stack: List[_Node] = []
        self.heap: List[Tuple[float, int, _Node]] = []
        self.diving = self.config.dive
        self.pruned_floor = math.inf
        self.incomplete = False
        self._seq = 0

    def solve(self) -> Tuple[Solution, SolveStats]:
        """
        Run the search.

        Returns:
            (Solution, SolveStats); the solution status is optimal,
            infeasible, unbounded or node-limit
        """
        start = time.perf_counter()
        lower, upper = self.problem.lower.copy(), self.problem.upper.copy()
        root = self._solve_relaxation(lower, upper, None)
        self.stats.nodes_explored = 1

        if root.status == LpStatus.INFEASIBLE:
            logger.info("root relaxation infeasible (phase 1 residual %.3e)", root.infeasibility)
            return self._finish(start, SolutionStatus.INFEASIBLE)
        if root.status == LpStatus.UNBOUNDED:
            logger.error("root relaxation unbounded; the model is missing a bound")
            return self._finish(start, SolutionStatus.UNBOUNDED)
        if root.status == LpStatus.ITERATION_LIMIT:
            return self._finish(start, SolutionStatus.NODE_LIMIT)

        self.stats.root_bound = root.objective
        self.stats.best_bound = root.objective
        self.stats.bound_history.append(root.objective)
        self._log_node(0, 0, root.objective)

        if self._is_integral(root.x):
            self._update_incumbent(root.x, root.objective)
            return self._finish(start, SolutionStatus.OPTIMAL)

        if self.config.heuristic:
            fixed = self._round_fix(root.x, root.basis)
            if fixed is not None:
                logger.info("round-and-fix incumbent %.10g", fixed.objective)
                self._update_incumbent(fixed.x, fixed.objective, ends_dive=False)

        self._push(_Node(0, 0, root.objective, lower, upper, root.x, root.basis,
                         root.reduced_costs))
        limit_hit = False

        while self._has_open():
            if self.stats.nodes_explored >= self.config.node_limit:
                limit_hit = True
                break
            node = self._pop()
            if node.bound >= self._cutoff():
                self._prune(node.bound)
                continue
            self._branch(node)
            self._record_bound()

        if limit_hit or self.incomplete:
            return self._finish(start, SolutionStatus.NODE_LIMIT)
        if self.incumbent is None:
            return self._finish(start, SolutionStatus.INFEASIBLE)
        return self._finish(start, SolutionStatus.OPTIMAL)

    def _solve_relaxation(self, lower: np.ndarray, upper: np.ndarray,
                          basis: Optional[LpBasis]) -> LpResult:
        result = solve_lp(self.problem.with_bounds(lower, upper), self.settings, basis)
        self.stats.lp_solves += 1
        self.stats.simplex_iterations += result.iterations
        return result

    def _is_integral(self, x: np.ndarray) -> bool:
        if self.int_idx.size == 0:
            return True
        return bool(np.all(_fractionality(x, self.int_idx) <= self.config.integrality_tol))

    def _cutoff(self) -> float:
        if self.incumbent is None:
            return math.inf
        inc = self.incumbent_obj
        return inc - self.config.relative_gap_tol * (1e-10 + abs(inc))

    def _prune(self, bound: float) -> None:
        if bound < self.incumbent_obj:
            self.pruned_floor = min(self.pruned_floor, bound)

    def _update_incumbent(self, x: np.ndarray, objective: float, ends_dive: bool = True) -> None:
        if ends_dive and self.diving:
            self.diving = False
            for node in self.stack:
                self._heap_push(node)
            self.stack = []
        if objective >= self.incumbent_obj:
            return
        self.incumbent = x.copy()
        self.incumbent_obj = objective
        self.stats.incumbent_objective = objective

    def _push(self, node: _Node) -> None:
        if self.diving:
            # only the node popped next keeps its basis inverse
            if self.stack:
                top = self.stack[-1]
                if top.basis is not None:
                    top.basis = top.basis.without_inverse()
            self.stack.append(node)
        else:
            self._heap_push(node)

    def _heap_push(self, node: _Node) -> None:
        if node.basis is not None:
            node.basis = node.basis.without_inverse()
        self._seq += 1
        heapq.heappush(self.heap, (node.bound, self._seq, node))

    def _pop(self) -> _Node:
        if self.stack:
            return self.stack.pop()
        return heapq.heappop(self.heap)[2]

    def _has_open(self) -> bool:
        return bool(self.stack or self.heap)

    def _open_min(self) -> float:
        best = min((n.bound for n in self.stack), default=math.inf)
        if self.heap:
            best = min(best, self.heap[0][0])
        return best

    def _record_bound(self) -> None:
        bound = min(self._open_min(), self.pruned_floor)
        bound = max(bound, self.stats.best_bound)
        bound = min(bound, self.incumbent_obj)
        self.stats.best_bound = bound
        self.stats.bound_history.append(bound)

    def _gap(self) -> float:
        if self.incumbent is None:
            return math.inf
        return max(self.incumbent_obj - self.stats.best_bound, 0.0) / max(abs(self.incumbent_obj), 1e-10)

    def _tighten(self, node: _Node) -> Tuple[np.ndarray, np.ndarray]:
        """
        Bounds of the node's subtree after reduced-cost tightening.

        A nonbasic integer column at a bound with reduced cost d cannot move
        more than (cutoff - bound) / |d| away from it without the LP bound
        reaching the cutoff.
        """
        lower, upper = node.lower, node.upper
        cutoff = self._cutoff()
        if not math.isfinite(cutoff) or node.reduced is None or node.basis is None:
            return lower, upper
        slack = cutoff - node.bound
        if slack <= 0:
            return lower, upper
        idx = self.int_idx
        d = node.reduced[idx]
        status = node.basis.status[idx]
        tol = self.config.optimality_tol
        lower, upper = lower.copy(), upper.copy()
        changed = 0

        at_lower = (status == VarStatus.AT_LOWER) & (d > tol)
        if at_lower.any():
            cols = idx[at_lower]
            reach = np.floor(slack / d[at_lower] + self.config.integrality_tol)
            tightened = np.minimum(upper[cols], lower[cols] + reach)
            changed += int(np.count_nonzero(tightened < upper[cols]))
            upper[cols] = tightened

        at_upper = (status == VarStatus.AT_UPPER) & (d < -tol)
        if at_upper.any():
            cols = idx[at_upper]
            reach = np.floor(slack / -d[at_upper] + self.config.integrality_tol)
            tightened = np.maximum(lower[cols], upper[cols] - reach)
            changed += int(np.count_nonzero(tightened > lower[cols]))
            lower[cols] = tightened

        if changed:
            self.stats.bounds_tightened += changed
            logger.debug("node %d: %d integer bounds tightened by reduced costs", node.id, changed)
        return lower, upper

    def _branch(self, node: _Node) -> None:
        scores = _fractionality(node.x, self.int_idx)
        k = int(self.int_idx[int(np.argmax(scores))])
        value = node.x[k]
        node_lower, node_upper = self._tighten(node)
        down_upper = node_upper.copy()
        down_upper[k] = min(math.floor(value), node_upper[k])
        up_lower = node_lower.copy()
        up_lower[k] = max(math.floor(value) + 1.0, node_lower[k])

        if node.basis is not None:
            node.basis = factor_basis(self.problem.with_bounds(node_lower, node_upper),
                                      node.basis, self.settings)

        children = []
        for lower, upper in ((node_lower, down_upper), (up_lower, node_upper)):
            if lower[k] > upper[k]:
                continue
            child = self._evaluate(lower, upper, node)
            if child is not None:
                children.append(child)
        for child in children:
            if child.bound < self._cutoff():
                self._push(child)
            else:
                self._prune(child.bound)

    def _evaluate(self, lower: np.ndarray, upper: np.ndarray, parent: _Node) -> Optional[_Node]:
        result = self._solve_relaxation(lower, upper, parent.basis)
        node_id = self.stats.nodes_explored
        self.stats.nodes_explored += 1
        if self.diving:
            self.stats.dive_nodes += 1
        depth = parent.depth + 1

        if result.status == LpStatus.INFEASIBLE:
            logger.info("node %6d depth %3d infeasible", node_id, depth)
            return None
        if result.status != LpStatus.OPTIMAL:
            logger.warning("node %d relaxation ended %s; subtree dropped", node_id, result.status.value)
            self.incomplete = True
            return None

        self._log_node(node_id, depth, result.objective)
        if result.objective >= self._cutoff():
            self._prune(result.objective)
            return None
        if self._is_integral(result.x):
            self._update_incumbent(result.x, result.objective)
            return None
        return _Node(node_id, depth, result.objective, lower, upper, result.x, result.basis,
                     result.reduced_costs)

    def _round_fix(self, x: np.ndarray, basis: Optional[LpBasis]) -> Optional[LpResult]:
        lower, upper = self.problem.lower.copy(), self.problem.upper.copy()
        for k in self.int_idx:
            fixed = min(math.ceil(x[k] - self.config.integrality_tol), upper[k])
            fixed = max(fixed, lower[k])
            lower[k] = upper[k] = fixed
        result = self._solve_relaxation(lower, upper, basis)
        if result.status != LpStatus.OPTIMAL:
            return None
        return result

    def _log_node(self, node_id: int, depth: int, objective: float) -> None:
        incumbent = f"{self.incumbent_obj:.6f}" if self.incumbent is not None else "-"
        gap = self._gap()
        logger.info(
            "node %6d depth %3d lp %.6f bound %.6f incumbent %s gap %s",
            node_id, depth, objective, self.stats.best_bound, incumbent,
            f"{gap:.2e}" if math.isfinite(gap) else "-",
        )

    def _finish(self, start: float, status: SolutionStatus) -> Tuple[Solution, SolveStats]:
        stats = self.stats
        names = self.model.variable_names()
        values = None
        objective = math.nan
        if self.incumbent is not None:
            values = _round_integers(self.incumbent, self.int_idx)
            objective = float(self.cost @ values)
            stats.incumbent_objective = objective

        if status == SolutionStatus.OPTIMAL:
            stats.best_bound = min(max(stats.best_bound, min(self.pruned_floor, objective)), objective)
            stats.bound_history.append(stats.best_bound)
        elif status == SolutionStatus.NODE_LIMIT and self._has_open():
            self._record_bound()

        stats.final_gap = self._gap() if self.incumbent is not None else math.inf
        stats.wall_time = time.perf_counter() - start
        logger.info(
            "branch and bound %s: objective %s, bound %.6f, %d nodes, %d simplex iterations, %.2fs",
            status.value, f"{objective:.10g}" if values is not None else "-",
            stats.best_bound, stats.nodes_explored, stats.simplex_iterations, stats.wall_time,
        )
        solution = Solution(
            status=status,
            names=names,
            values=values,
            objective=objective,
            root_bound=stats.root_bound,
        )
        return solution, stats


def solve_milp(m: MilpModel, cfg: Optional[BnbConfig] = None) -> Tuple[Solution, SolveStats]:
    """
    Solve a MILP by branch and bound.

    Args:
        m: The model (integer variables flagged in its catalog)
        cfg: Search configuration

    Returns:
        (Solution, SolveStats). Infeasible and unbounded roots are returned
        as statuses rather than raised.
    """
    return BranchAndBound(m, cfg).solve()


def round_fix_heuristic(
    m: MilpModel,
    lp_values: Any,
    cfg: Optional[BnbConfig] = None,
) -> Optional[Solution]:
    """
    Round fractional integer variables up, fix them and re-solve the LP.

    Args:
        m: The model
        lp_values: A feasible point of the LP relaxation
        cfg: Tolerances

    Returns:
        A solution with status "feasible", or None when the fixed LP is
        infeasible. A point whose integer variables are already integral is
        returned without re-solving.
    """
    cfg = cfg or BnbConfig()
    x = np.asarray(lp_values, dtype=float)
    int_idx = np.flatnonzero(m.integer_mask())
    names = m.variable_names()
    cost = m.objective_vector()

    if int_idx.size == 0 or np.all(_fractionality(x, int_idx) <= cfg.integrality_tol):
        values = _round_integers(x, int_idx)
        return Solution(SolutionStatus.FEASIBLE, names, values, float(cost @ values))

    search = BranchAndBound(m, cfg)
    result = search._round_fix(x, None)
    if result is None:
        return None
    values = _round_integers(result.x, int_idx)
    return Solution(SolutionStatus.FEASIBLE, names, values, float(cost @ values))
