"""

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers

LEGAL NOTICE:
This software is proprietary and confidential. Unauthorized copying,
distribution, modification, or use is strictly prohibited without
explicit written permission from the copyright holder.

LP Solver - Bounded-variable primal simplex.

Features:
- Rows of any sense turned into equalities with one bounded slack each
- Composite phase 1 minimizing the sum of basic infeasibilities, so any
  starting basis (the all-slack basis or a warm-start basis) can be used
- Dantzig pricing, switching to Bland's rule after a stall
- Explicit basis inverse with rank-one updates and periodic LU
  refactorization (scipy.linalg)
- Bound flips for variables whose range is shorter than the ratio-test step
- Warm starts reuse a basis inverse carried on the LpBasis and skip the
  initial factorization

Slack s_i of row i satisfies a_i x + s_i = b_i with bounds
    L: s in [0, inf)    E: s in [0, 0]    G: s in (-inf, 0]
"""

import logging
import math
import warnings
from dataclasses import dataclass, field, replace
from enum import Enum, IntEnum
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp
from scipy.linalg import lu_factor, lu_solve

logger = logging.getLogger(__name__)

SENSES = ("L", "E", "G")


class SolverError(Exception):
    """Base exception for solver problems."""

    def __init__(self, message: str):
        self.message = message
        super().__init__(message)


class SingularBasisError(SolverError):
    """Raised when the basis matrix is numerically singular."""

    def __init__(self, message: str, position: int = -1, variable: Optional[str] = None):
        self.position = position
        self.variable = variable
        super().__init__(message)


class LpStatus(Enum):
    """Outcome of an LP solve."""
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    ITERATION_LIMIT = "iteration-limit"


class VarStatus(IntEnum):
    """Position of a variable relative to the basis."""
    BASIC = 0
    AT_LOWER = 1
    AT_UPPER = 2


@dataclass
class LpProblem:
    """
    minimize objective . x  subject to  matrix x (senses) rhs, lower <= x <= upper.

    Lower bounds must be finite; upper bounds may be infinite.
    """
    matrix: sp.csr_matrix
    senses: Sequence[str]
    rhs: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    objective: np.ndarray
    names: Optional[List[str]] = None
    _augmented: Optional[Tuple[sp.csc_matrix, sp.csr_matrix]] = field(
        default=None, init=False, repr=False, compare=False
    )

    def __post_init__(self):
        self.matrix = sp.csr_matrix(self.matrix, dtype=float)
        self.senses = [str(s) for s in self.senses]
        self.rhs = np.asarray(self.rhs, dtype=float).reshape(-1)
        self.lower = np.asarray(self.lower, dtype=float).reshape(-1)
        self.upper = np.asarray(self.upper, dtype=float).reshape(-1)
        self.objective = np.asarray(self.objective, dtype=float).reshape(-1)
        self.validate()

    @property
    def num_rows(self) -> int:
        return self.matrix.shape[0]

    @property
    def num_cols(self) -> int:
        return self.matrix.shape[1]

    def validate(self) -> None:
        """
        Check shapes and bounds.

        Raises:
            SolverError: On the first inconsistency
        """
        m, n = self.matrix.shape
        if len(self.senses) != m or len(self.rhs) != m:
            raise SolverError(f"{m} rows but {len(self.senses)} senses and {len(self.rhs)} rhs")
        for name in ("lower", "upper", "objective"):
            if len(getattr(self, name)) != n:
                raise SolverError(f"{name} has {len(getattr(self, name))} entries for {n} columns")
        bad = [s for s in self.senses if s not in SENSES]
        if bad:
            raise SolverError(f"unknown row sense {bad[0]!r}")
        if not np.all(np.isfinite(self.lower)):
            raise SolverError("every variable needs a finite lower bound")
        if np.any(self.lower > self.upper):
            k = int(np.argmax(self.lower > self.upper))
            raise SolverError(f"column {k} has lower {self.lower[k]} > upper {self.upper[k]}")
        if not np.all(np.isfinite(self.objective)) or not np.all(np.isfinite(self.rhs)):
            raise SolverError("objective and rhs must be finite")

    def with_bounds(self, lower: np.ndarray, upper: np.ndarray) -> "LpProblem":
        """Copy sharing the matrix, with new variable bounds."""
        clone = replace(self, lower=np.array(lower, dtype=float), upper=np.array(upper, dtype=float))
        clone._augmented = self.augmented()
        return clone

    def augmented(self) -> Tuple[sp.csc_matrix, sp.csr_matrix]:
        """[matrix | I] and its transpose, built once and shared by with_bounds copies."""
        if self._augmented is None:
            A = sp.hstack([self.matrix.tocsc(), sp.identity(self.num_rows, format="csc")],
                          format="csc")
            self._augmented = (A, A.T.tocsr())
        return self._augmented

    def column_name(self, k: int) -> str:
        if self.names is not None and k < len(self.names):
            return self.names[k]
        return f"col{k}"

    @classmethod
    def from_dense(
        cls,
        A: Any,
        senses: Sequence[str],
        rhs: Sequence[float],
        objective: Sequence[float],
        lower: Optional[Sequence[float]] = None,
        upper: Optional[Sequence[float]] = None,
    ) -> "LpProblem":
        """Build from a dense matrix; bounds default to [0, inf)."""
        A = np.atleast_2d(np.asarray(A, dtype=float))
        n = A.shape[1]
        return cls(
            matrix=sp.csr_matrix(A),
            senses=senses,
            rhs=np.asarray(rhs, dtype=float),
            lower=np.zeros(n) if lower is None else np.asarray(lower, dtype=float),
            upper=np.full(n, math.inf) if upper is None else np.asarray(upper, dtype=float),
            objective=np.asarray(objective, dtype=float),
        )


@dataclass
class SimplexSettings:
    """Tolerances and limits of the simplex method."""
    feasibility_tol: float = 1e-7
    optimality_tol: float = 1e-7
    pivot_tol: float = 1e-9
    refactor_interval: int = 64
    stall_threshold: int = 50
    iteration_limit: int = 100000

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        for name in ("feasibility_tol", "optimality_tol", "pivot_tol"):
            if not getattr(self, name) > 0:
                raise SolverError(f"{name} must be > 0")
        if self.refactor_interval < 1 or self.stall_threshold < 1 or self.iteration_limit < 1:
            raise SolverError("refactor_interval, stall_threshold and iteration_limit must be >= 1")


@dataclass
class LpBasis:
    """
    A simplex basis over structural columns followed by row slacks.

    basic[r] is the column basic in position r; status holds a VarStatus
    per column. inverse, when present, is the inverse of the basis matrix
    in the order of basic; it is never modified in place.
    """
    basic: np.ndarray
    status: np.ndarray
    inverse: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    def copy(self) -> "LpBasis":
        return LpBasis(self.basic.copy(), self.status.copy(), self.inverse)

    def without_inverse(self) -> "LpBasis":
        return LpBasis(self.basic, self.status)


@dataclass
class LpResult:
    """Result of an LP solve."""
    status: LpStatus
    x: np.ndarray
    objective: float
    basis: Optional[LpBasis] = None
    reduced_costs: np.ndarray = field(default_factory=lambda: np.zeros(0))
    dual_infeasibility: float = 0.0
    primal_residual: float = 0.0
    infeasibility: float = 0.0
    ray: Optional[np.ndarray] = None
    iterations: int = 0

    @property
    def is_optimal(self) -> bool:
        return self.status == LpStatus.OPTIMAL


class BoundedSimplex:
    """
    Primal simplex over one LpProblem.

    Example:
        result = BoundedSimplex(problem).solve()
    """

    def __init__(self, problem: LpProblem, settings: Optional[SimplexSettings] = None):
        self.problem = problem
        self.settings = settings or SimplexSettings()
        p = problem
        m, n = p.num_rows, p.num_cols
        self.m, self.n = m, n

        slack_lo = np.zeros(m)
        slack_hi = np.zeros(m)
        for i, sense in enumerate(p.senses):
            if sense == "L":
                slack_hi[i] = math.inf
            elif sense == "G":
                slack_lo[i] = -math.inf

        self.A, self.AT = p.augmented()
        self.b = p.rhs
        self.lo = np.concatenate([p.lower, slack_lo])
        self.up = np.concatenate([p.upper, slack_hi])
        self.cost = np.concatenate([p.objective, np.zeros(m)])
        self.fixed = self.lo == self.up

        self.basic = np.arange(n, n + m)
        self.status = np.full(n + m, VarStatus.AT_LOWER, dtype=np.int8)
        self.x = np.zeros(n + m)
        self.Binv = np.eye(m)
        self.pivots_since_refactor = 0
        self.iterations = 0

    def solve(self, basis: Optional[LpBasis] = None) -> LpResult:
        """
        Run phase 1 and phase 2 from the given basis (or the slack basis).

        Raises:
            SingularBasisError: If the basis stays singular after refactorization
        """
        if basis is not None and self._load_basis(basis):
            if basis.inverse is not None and basis.inverse.shape == (self.m, self.m):
                self.Binv = basis.inverse.copy()
                self.pivots_since_refactor = 0
            else:
                try:
                    self._refactor()
                except SingularBasisError as e:
                    logger.debug("warm-start basis rejected (%s); starting from slacks", e.message)
                    self._cold_start()
        else:
            self._cold_start()
        return self._iterate()

    def _cold_start(self) -> None:
        n, m = self.n, self.m
        self.basic = np.arange(n, n + m)
        self.status[:] = VarStatus.AT_LOWER
        self.status[self.basic] = VarStatus.BASIC
        self._place_nonbasic()
        self.Binv = np.eye(m)
        self.pivots_since_refactor = 0

    def _load_basis(self, basis: LpBasis) -> bool:
        n, m = self.n, self.m
        if len(basis.basic) != m or len(basis.status) != n + m:
            return False
        self.basic = np.array(basis.basic, dtype=np.int64)
        self.status = np.array(basis.status, dtype=np.int8)
        if np.count_nonzero(self.status == VarStatus.BASIC) != m:
            return False
        if not np.all(self.status[self.basic] == VarStatus.BASIC):
            return False
        self._place_nonbasic()
        return True

    def _place_nonbasic(self) -> None:
        at_upper = self.status == VarStatus.AT_UPPER
        at_lower = self.status == VarStatus.AT_LOWER
        # a status pointing at an infinite bound moves to the finite one
        bad_upper = at_upper & ~np.isfinite(self.up)
        bad_lower = at_lower & ~np.isfinite(self.lo)
        self.status[bad_upper] = VarStatus.AT_LOWER
        self.status[bad_lower] = VarStatus.AT_UPPER
        at_upper = self.status == VarStatus.AT_UPPER
        at_lower = self.status == VarStatus.AT_LOWER
        self.x[at_lower] = self.lo[at_lower]
        self.x[at_upper] = self.up[at_upper]

    def _refactor(self) -> None:
        m = self.m
        if m == 0:
            self.Binv = np.zeros((0, 0))
            return
        B = self.A[:, self.basic].toarray()
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            lu, piv = lu_factor(B, check_finite=False)
        diag = np.abs(np.diag(lu))
        threshold = self.settings.pivot_tol * max(1.0, float(diag.max(initial=0.0)))
        small = np.flatnonzero(diag <= threshold)
        if small.size:
            position = int(small[0])
            column = int(self.basic[position])
            raise SingularBasisError(
                f"singular basis at position {position} (column {self._name(column)}, "
                f"pivot {diag[position]:.3e})",
                position=position,
                variable=self._name(column),
            )
        self.Binv = lu_solve((lu, piv), np.eye(m), check_finite=False)
        self.pivots_since_refactor = 0

    def _name(self, column: int) -> str:
        if column < self.n:
            return self.problem.column_name(column)
        return f"slack{column - self.n}"

    def _column(self, k: int) -> np.ndarray:
        col = np.zeros(self.m)
        start, end = self.A.indptr[k], self.A.indptr[k + 1]
        col[self.A.indices[start:end]] = self.A.data[start:end]
        return col

    def _compute_basics(self) -> None:
        nonbasic = self.x.copy()
        nonbasic[self.basic] = 0.0
        self.x[self.basic] = self.Binv @ (self.b - self.A @ nonbasic)

    def _infeasibilities(self) -> Tuple[np.ndarray, np.ndarray, float]:
        tol = self.settings.feasibility_tol
        xb = self.x[self.basic]
        lb, ub = self.lo[self.basic], self.up[self.basic]
        below = xb < lb - tol
        above = xb > ub + tol
        total = float(np.sum((lb - xb)[below]) + np.sum((xb - ub)[above]))
        return below, above, total

    def _price(self, d: np.ndarray, bland: bool) -> Optional[int]:
        tol = self.settings.optimality_tol
        eligible = (
            ~self.fixed
            & (((self.status == VarStatus.AT_LOWER) & (d < -tol))
               | ((self.status == VarStatus.AT_UPPER) & (d > tol)))
        )
        candidates = np.flatnonzero(eligible)
        if candidates.size == 0:
            return None
        if bland:
            return int(candidates[0])
        return int(candidates[np.argmax(np.abs(d[candidates]))])

    def _ratio_test(self, rate: np.ndarray, bland: bool) -> Tuple[float, int, bool]:
        """Smallest blocking step: (step, basis position or -1, leaves at upper)."""
        s = self.settings
        ftol, ptol = s.feasibility_tol, s.pivot_tol
        xb = self.x[self.basic]
        lb, ub = self.lo[self.basic], self.up[self.basic]
        below = xb < lb - ftol
        above = xb > ub + ftol
        feasible = ~below & ~above
        inc = rate > ptol
        dec = rate < -ptol

        steps = np.full(self.m, math.inf)
        to_upper = np.zeros(self.m, dtype=bool)
        with np.errstate(divide="ignore", invalid="ignore"):
            mask = inc & below
            steps[mask] = (lb[mask] - xb[mask]) / rate[mask]
            mask = inc & feasible & np.isfinite(ub)
            steps[mask] = (ub[mask] - xb[mask]) / rate[mask]
            to_upper[mask] = True
            mask = dec & above
            steps[mask] = (ub[mask] - xb[mask]) / rate[mask]
            to_upper[mask] = True
            mask = dec & feasible & np.isfinite(lb)
            steps[mask] = (lb[mask] - xb[mask]) / rate[mask]
        steps = np.maximum(steps, 0.0)

        best = float(steps.min(initial=math.inf))
        if not math.isfinite(best):
            return math.inf, -1, False
        ties = np.flatnonzero(steps <= best * (1.0 + 1e-9) + 1e-12)
        if bland:
            r = int(ties[np.argmin(self.basic[ties])])
        else:
            r = int(ties[np.argmax(np.abs(rate[ties]))])
        return best, r, bool(to_upper[r])

    def _pivot(self, entering: int, r: int, alpha: np.ndarray, leaves_at_upper: bool) -> None:
        leaving = int(self.basic[r])
        self.status[leaving] = VarStatus.AT_UPPER if leaves_at_upper else VarStatus.AT_LOWER
        self.x[leaving] = self.up[leaving] if leaves_at_upper else self.lo[leaving]
        self.basic[r] = entering
        self.status[entering] = VarStatus.BASIC

        pivot_row = self.Binv[r] / alpha[r]
        self.Binv -= np.outer(alpha, pivot_row)
        self.Binv[r] = pivot_row
        self.pivots_since_refactor += 1
        if self.pivots_since_refactor >= self.settings.refactor_interval:
            self._refactor()

    def _iterate(self) -> LpResult:
        s = self.settings
        phase = 0
        stall = 0
        best_obj = math.inf
        rechecked = False

        while True:
            self._compute_basics()
            below, above, infeasibility = self._infeasibilities()
            current = 1 if infeasibility > 0 else 2
            if current != phase:
                phase, stall, best_obj = current, 0, math.inf

            if phase == 1:
                costs = np.zeros(self.n + self.m)
                cb = np.zeros(self.m)
                cb[below] = -1.0
                cb[above] = 1.0
                objective = infeasibility
            else:
                costs = self.cost
                cb = self.cost[self.basic]
                objective = float(self.cost @ self.x)

            if objective < best_obj - 1e-12 * max(1.0, abs(objective)):
                best_obj = objective
                stall = 0
            else:
                stall += 1
            bland = stall >= s.stall_threshold

            y = cb @ self.Binv if self.m else np.zeros(0)
            d = costs - self.AT @ y
            d[self.basic] = 0.0
            entering = self._price(d, bland)

            if entering is None:
                if self.pivots_since_refactor > 0 and not rechecked:
                    self._refactor()
                    rechecked = True
                    continue
                if phase == 1:
                    return self._result(LpStatus.INFEASIBLE, d, infeasibility=infeasibility)
                return self._result(LpStatus.OPTIMAL, d)
            rechecked = False

            if self.iterations >= s.iteration_limit:
                logger.warning("simplex stopped at the iteration limit (%d)", s.iteration_limit)
                return self._result(LpStatus.ITERATION_LIMIT, d, infeasibility=infeasibility)

            sigma = 1.0 if self.status[entering] == VarStatus.AT_LOWER else -1.0
            alpha = self.Binv @ self._column(entering)
            rate = -sigma * alpha
            step, r, leaves_at_upper = self._ratio_test(rate, bland)
            span = self.up[entering] - self.lo[entering]
            self.iterations += 1

            if math.isfinite(span) and span <= step:
                self.status[entering] = (VarStatus.AT_UPPER if sigma > 0 else VarStatus.AT_LOWER)
                self.x[entering] = self.up[entering] if sigma > 0 else self.lo[entering]
                continue
            if r < 0:
                if phase == 1:
                    raise SolverError("phase 1 found an unblocked improving direction")
                ray = np.zeros(self.n)
                if entering < self.n:
                    ray[entering] = sigma
                for pos, column in enumerate(self.basic):
                    if column < self.n:
                        ray[column] = rate[pos]
                return self._result(LpStatus.UNBOUNDED, d, ray=ray)
            self._pivot(entering, r, alpha, leaves_at_upper)

    def _result(
        self,
        status: LpStatus,
        d: np.ndarray,
        infeasibility: float = 0.0,
        ray: Optional[np.ndarray] = None,
    ) -> LpResult:
        n = self.n
        x = self.x[:n].copy()
        nonbasic = (self.status != VarStatus.BASIC) & ~self.fixed
        at_lower = nonbasic & (self.status == VarStatus.AT_LOWER)
        at_upper = nonbasic & (self.status == VarStatus.AT_UPPER)
        dual_inf = 0.0
        if status == LpStatus.OPTIMAL:
            dual_inf = float(max(np.max(-d[at_lower], initial=0.0), np.max(d[at_upper], initial=0.0), 0.0))
        result = LpResult(
            status=status,
            x=x,
            objective=float(self.problem.objective @ x),
            basis=LpBasis(
                self.basic.copy(),
                self.status.copy(),
                self.Binv.copy() if self.pivots_since_refactor == 0 else None,
            ),
            reduced_costs=d[:n].copy(),
            dual_infeasibility=dual_inf,
            primal_residual=primal_residual(self.problem, x),
            infeasibility=infeasibility,
            ray=ray,
            iterations=self.iterations,
        )
        logger.debug("simplex %s after %d iterations, objective %.10g",
                     status.value, self.iterations, result.objective)
        return result


def primal_residual(p: LpProblem, x: np.ndarray) -> float:
    """Largest row or bound violation of x."""
    activity = p.matrix @ x if p.num_rows else np.zeros(0)
    worst = 0.0
    for i, sense in enumerate(p.senses):
        diff = activity[i] - p.rhs[i]
        if sense == "E":
            worst = max(worst, abs(diff))
        elif sense == "L":
            worst = max(worst, diff)
        else:
            worst = max(worst, -diff)
    bound = np.maximum(p.lower - x, x - p.upper)
    return float(max(worst, np.max(bound, initial=0.0), 0.0))


def _solve_bounds_only(p: LpProblem) -> LpResult:
    x = p.lower.copy()
    negative = p.objective < 0
    unbounded = negative & ~np.isfinite(p.upper)
    if np.any(unbounded):
        ray = np.zeros(p.num_cols)
        ray[int(np.argmax(unbounded))] = 1.0
        return LpResult(LpStatus.UNBOUNDED, x, float(p.objective @ x), ray=ray,
                        reduced_costs=p.objective.copy())
    x[negative] = p.upper[negative]
    status = np.where(negative, VarStatus.AT_UPPER, VarStatus.AT_LOWER).astype(np.int8)
    return LpResult(
        LpStatus.OPTIMAL, x, float(p.objective @ x),
        basis=LpBasis(np.zeros(0, dtype=np.int64), status),
        reduced_costs=p.objective.copy(),
    )


def solve_lp(
    p: LpProblem,
    settings: Optional[SimplexSettings] = None,
    basis: Optional[LpBasis] = None,
) -> LpResult:
    """
    Solve an LP with the bounded-variable primal simplex.

    Args:
        p: The problem
        settings: Tolerances and limits
        basis: Optional warm-start basis (e.g. from a parent node)

    Returns:
        LpResult; an infeasible result carries the phase 1 infeasibility,
        an unbounded one an improving ray

    Raises:
        SingularBasisError: If a basis is numerically singular even after
            restarting from the slack basis
    """
    settings = settings or SimplexSettings()
    if p.num_rows == 0:
        return _solve_bounds_only(p)
    engine = BoundedSimplex(p, settings)
    try:
        return engine.solve(basis)
    except SingularBasisError as e:
        if basis is None:
            raise
        logger.info("retrying from the slack basis after %s", e.message)
        return BoundedSimplex(p, settings).solve(None)


def factor_basis(
    p: LpProblem,
    basis: LpBasis,
    settings: Optional[SimplexSettings] = None,
) -> LpBasis:
    """
    Attach the basis inverse so several warm starts share one factorization.

    Returns:
        A copy of the basis carrying its inverse, or the basis unchanged when
        it does not fit the problem or is singular
    """
    if basis.inverse is not None or p.num_rows == 0:
        return basis
    engine = BoundedSimplex(p, settings)
    if not engine._load_basis(basis):
        return basis
    try:
        engine._refactor()
    except SingularBasisError:
        return basis
    return LpBasis(basis.basic.copy(), basis.status.copy(), engine.Binv)
