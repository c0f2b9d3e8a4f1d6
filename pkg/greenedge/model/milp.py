"""

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers

LEGAL NOTICE:
This software is proprietary and confidential. Unauthorized copying,
distribution, modification, or use is strictly prohibited without
explicit written permission from the copyright holder.

MILP Model - Sparse mixed-integer linear program container.

Provides:
- Named variable catalog with bounds, cost and integrality
- Sparse constraint rows with sense, right-hand side and provenance family
- Conversion to the solver's LpProblem
- Solution and SolutionStatus types shared by the solver and reporting
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.sparse as sp


class ModelError(Exception):
    """Base exception for model construction and evaluation problems."""

    def __init__(self, message: str):
        self.message = message
        super().__init__(message)


class DimensionMismatchError(ModelError):
    """Raised when scenario dimensions disagree with its matrices."""


class SolutionError(ModelError):
    """Raised when a solution cannot be used for the requested operation."""


class ConstraintFamily(Enum):
    """Provenance tag of a variable bound or constraint row."""
    SERVERS = "a"
    ALLOCATION = "b"
    ELIGIBILITY = "c"
    UTILIZATION = "d"
    POWER = "e"
    GRID = "f"
    BALANCE = "g"
    BATTERY_RATE = "h"
    DYNAMICS = "i"
    LEVEL = "j"
    SELLBACK = "k"
    OBJECTIVE = "l"

    @property
    def label(self) -> str:
        return f"({self.value}) {self.name.lower().replace('_', ' ')}"


class RowSense(Enum):
    """Sense of a constraint row."""
    LE = "L"
    EQ = "E"
    GE = "G"

    @classmethod
    def parse(cls, value: Union[str, "RowSense"]) -> "RowSense":
        if isinstance(value, RowSense):
            return value
        aliases = {"<=": cls.LE, "=": cls.EQ, "==": cls.EQ, ">=": cls.GE}
        if value in aliases:
            return aliases[value]
        return cls(value)


@dataclass
class Variable:
    """One decision variable of the catalog."""
    name: str
    index: int
    lower: float = 0.0
    upper: float = math.inf
    cost: float = 0.0
    integer: bool = False
    family: Optional[ConstraintFamily] = None


@dataclass
class ConstraintRow:
    """One sparse constraint row: sum(coef * var) <sense> rhs."""
    name: str
    index: int
    coefficients: Dict[int, float]
    sense: RowSense
    rhs: float
    family: Optional[ConstraintFamily] = None

    def activity(self, values: Sequence[float]) -> float:
        """Left-hand side evaluated at values."""
        return float(sum(coef * values[k] for k, coef in self.coefficients.items()))

    def residual(self, values: Sequence[float]) -> float:
        """Amount by which values violate the row (0 when satisfied)."""
        lhs = self.activity(values)
        if self.sense == RowSense.EQ:
            return abs(lhs - self.rhs)
        if self.sense == RowSense.LE:
            return max(lhs - self.rhs, 0.0)
        return max(self.rhs - lhs, 0.0)


class MilpModel:
    """
    A minimization MILP over a named variable catalog.

    Variables and rows are appended in order; their position is their
    index. Rows never store zero coefficients.

    Example:
        model = MilpModel("tiny")
        x = model.add_variable("x", upper=4, cost=-1, integer=True)
        model.add_row("cap", {x: 2.0}, "<=", 7.0)
    """

    def __init__(self, name: str = "greenedge"):
        self.name = name
        self.variables: List[Variable] = []
        self.rows: List[ConstraintRow] = []
        self._index: Dict[str, int] = {}
        self._row_index: Dict[str, int] = {}

    @property
    def num_variables(self) -> int:
        return len(self.variables)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    @property
    def num_integers(self) -> int:
        return sum(1 for v in self.variables if v.integer)

    def add_variable(
        self,
        name: str,
        lower: float = 0.0,
        upper: float = math.inf,
        cost: float = 0.0,
        integer: bool = False,
        family: Optional[ConstraintFamily] = None,
    ) -> int:
        """
        Append a variable to the catalog.

        Returns:
            The new variable's index

        Raises:
            ModelError: On duplicate names or inverted bounds
        """
        if name in self._index:
            raise ModelError(f"duplicate variable name {name!r}")
        if not math.isfinite(lower):
            raise ModelError(f"variable {name!r} needs a finite lower bound")
        if lower > upper:
            raise ModelError(f"variable {name!r} has lower bound {lower} > upper bound {upper}")
        index = len(self.variables)
        self.variables.append(Variable(name, index, float(lower), float(upper),
                                       float(cost), integer, family))
        self._index[name] = index
        return index

    def add_row(
        self,
        name: str,
        coefficients: Mapping[Union[int, str], float],
        sense: Union[str, RowSense],
        rhs: float,
        family: Optional[ConstraintFamily] = None,
    ) -> int:
        """
        Append a constraint row.

        Args:
            name: Row name (unique)
            coefficients: Variable index or name to coefficient; zeros are dropped
            sense: "<=", "=", ">=" or a RowSense
            rhs: Right-hand side
            family: Provenance tag

        Returns:
            The new row's index

        Raises:
            ModelError: On duplicate names or unknown variables
        """
        if name in self._row_index:
            raise ModelError(f"duplicate row name {name!r}")
        entries: Dict[int, float] = {}
        for key, coef in coefficients.items():
            k = self.index_of(key) if isinstance(key, str) else int(key)
            if not 0 <= k < len(self.variables):
                raise ModelError(f"row {name!r} references unknown variable {key!r}")
            if coef != 0.0:
                entries[k] = entries.get(k, 0.0) + float(coef)
        entries = {k: c for k, c in entries.items() if c != 0.0}
        index = len(self.rows)
        self.rows.append(ConstraintRow(name, index, entries, RowSense.parse(sense),
                                       float(rhs), family))
        self._row_index[name] = index
        return index

    def set_objective(self, key: Union[int, str], cost: float) -> None:
        """Set the objective coefficient of one variable."""
        k = self.index_of(key) if isinstance(key, str) else key
        self.variables[k].cost = float(cost)

    def index_of(self, name: str) -> int:
        """Index of the named variable."""
        try:
            return self._index[name]
        except KeyError:
            raise ModelError(f"unknown variable {name!r}") from None

    def has_variable(self, name: str) -> bool:
        return name in self._index

    def variable(self, name: str) -> Variable:
        return self.variables[self.index_of(name)]

    def row(self, name: str) -> ConstraintRow:
        try:
            return self.rows[self._row_index[name]]
        except KeyError:
            raise ModelError(f"unknown row {name!r}") from None

    def family_of(self, name: str) -> Optional[ConstraintFamily]:
        """Provenance family of a variable or row name."""
        if name in self._index:
            return self.variables[self._index[name]].family
        if name in self._row_index:
            return self.rows[self._row_index[name]].family
        raise ModelError(f"unknown variable or row {name!r}")

    def variable_names(self) -> List[str]:
        return [v.name for v in self.variables]

    def objective_vector(self) -> np.ndarray:
        return np.array([v.cost for v in self.variables], dtype=float)

    def lower_bounds(self) -> np.ndarray:
        return np.array([v.lower for v in self.variables], dtype=float)

    def upper_bounds(self) -> np.ndarray:
        return np.array([v.upper for v in self.variables], dtype=float)

    def integer_mask(self) -> np.ndarray:
        return np.array([v.integer for v in self.variables], dtype=bool)

    def senses(self) -> List[str]:
        return [r.sense.value for r in self.rows]

    def rhs(self) -> np.ndarray:
        return np.array([r.rhs for r in self.rows], dtype=float)

    def constraint_matrix(self) -> sp.csr_matrix:
        """The rows as a (num_rows, num_variables) CSR matrix."""
        data: List[float] = []
        cols: List[int] = []
        indptr = [0]
        for row in self.rows:
            for k in sorted(row.coefficients):
                cols.append(k)
                data.append(row.coefficients[k])
            indptr.append(len(cols))
        return sp.csr_matrix(
            (np.array(data, dtype=float), np.array(cols, dtype=np.int64), np.array(indptr)),
            shape=(self.num_rows, self.num_variables),
        )

    def objective_value(self, values: Sequence[float]) -> float:
        """Objective vector dotted with values."""
        return float(np.dot(self.objective_vector(), np.asarray(values, dtype=float)))

    def to_lp(self) -> Any:
        """The LP relaxation as a solver LpProblem."""
        from ..solver.lp import LpProblem

        return LpProblem(
            matrix=self.constraint_matrix(),
            senses=self.senses(),
            rhs=self.rhs(),
            lower=self.lower_bounds(),
            upper=self.upper_bounds(),
            objective=self.objective_vector(),
            names=self.variable_names(),
        )

    def validate(self) -> List[str]:
        """Return a list of structural problems (empty when consistent)."""
        problems = []
        for v in self.variables:
            if v.lower > v.upper:
                problems.append(f"{v.name}: lower {v.lower} > upper {v.upper}")
        for r in self.rows:
            for k, coef in r.coefficients.items():
                if not 0 <= k < self.num_variables:
                    problems.append(f"{r.name}: unknown column {k}")
                elif coef == 0.0:
                    problems.append(f"{r.name}: stored zero coefficient")
        return problems

    def family_counts(self) -> Dict[str, Tuple[int, int]]:
        """(variables, rows) tagged with each family."""
        counts: Dict[str, Tuple[int, int]] = {}
        for fam in ConstraintFamily:
            nv = sum(1 for v in self.variables if v.family == fam)
            nr = sum(1 for r in self.rows if r.family == fam)
            counts[fam.value] = (nv, nr)
        return counts

    def __repr__(self) -> str:
        return (f"MilpModel({self.name!r}, variables={self.num_variables}, "
                f"integers={self.num_integers}, rows={self.num_rows})")


class SolutionStatus(Enum):
    """Outcome of a MILP solve."""
    OPTIMAL = "optimal"
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    NODE_LIMIT = "node-limit"


@dataclass
class Solution:
    """
    Values of every cataloged variable plus the objective.

    values is None when no integer-feasible point is known (infeasible,
    unbounded, or a node limit hit before the first incumbent).
    """
    status: SolutionStatus
    names: List[str]
    values: Optional[np.ndarray] = None
    objective: float = math.nan
    root_bound: Optional[float] = None
    _lookup: Dict[str, int] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.values is not None:
            self.values = np.asarray(self.values, dtype=float)
            if len(self.values) != len(self.names):
                raise SolutionError(
                    f"solution has {len(self.values)} values for {len(self.names)} variables"
                )
        self._lookup = {name: k for k, name in enumerate(self.names)}

    @property
    def is_optimal(self) -> bool:
        return self.status == SolutionStatus.OPTIMAL

    @property
    def has_values(self) -> bool:
        return self.values is not None

    def value(self, name: str) -> float:
        """Value of the named variable."""
        if self.values is None:
            raise SolutionError(f"solution with status {self.status.value} carries no values")
        try:
            return float(self.values[self._lookup[name]])
        except KeyError:
            raise SolutionError(f"solution has no variable {name!r}") from None

    def get(self, name: str, default: Optional[float] = None) -> Optional[float]:
        if self.values is None or name not in self._lookup:
            return default
        return float(self.values[self._lookup[name]])

    def as_dict(self) -> Dict[str, float]:
        """Variable name to value, in catalog order."""
        if self.values is None:
            return {}
        return {name: float(v) for name, v in zip(self.names, self.values)}

    def to_dict(self) -> Dict[str, Any]:
        """Convert to a plain dictionary."""
        return {
            "status": self.status.value,
            "objective": None if math.isnan(self.objective) else float(self.objective),
            "root_bound": None if self.root_bound is None else float(self.root_bound),
            "values": self.as_dict(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Solution":
        """Create an instance from a plain dictionary."""
        values = data.get("values") or {}
        objective = data.get("objective")
        return cls(
            status=SolutionStatus(data["status"]),
            names=list(values.keys()),
            values=np.array([float(v) for v in values.values()]) if values else None,
            objective=math.nan if objective is None else float(objective),
            root_bound=data.get("root_bound"),
        )


def solution_from_values(
    model: MilpModel,
    values: Iterable[float],
    status: SolutionStatus = SolutionStatus.OPTIMAL,
    root_bound: Optional[float] = None,
) -> Solution:
    """Wrap a value vector over model's catalog, computing the objective."""
    vector = np.asarray(list(values), dtype=float)
    return Solution(
        status=status,
        names=model.variable_names(),
        values=vector,
        objective=model.objective_value(vector),
        root_bound=root_bound,
    )
