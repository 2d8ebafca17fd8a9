"""Generic mixed-integer linear program container and solution records.

A :class:`MilpProblem` is a plain minimization model: variables with bounds,
linear rows with a sense, and a linear objective.  It is a builder while
being assembled and must be treated as read-only once handed to a solver;
solves never mutate the problem, so one instance can back any number of
concurrent solves.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np


class VarKind(enum.Enum):
    CONTINUOUS = "continuous"
    BINARY = "binary"


class RowSense(enum.Enum):
    LE = "<="
    GE = ">="
    EQ = "="


class SolveStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    ITERATION_LIMIT = "iteration_limit"


@dataclass(frozen=True, slots=True)
class VariableDef:
    id: int
    name: str
    lower: float
    upper: float
    kind: VarKind


@dataclass(frozen=True, slots=True)
class LinearConstraint:
    terms: tuple[tuple[int, float], ...]
    sense: RowSense
    rhs: float
    label: str


@dataclass(frozen=True, slots=True)
class SolveResult:
    """Outcome of a solve; ``objective``/``assignment`` only when optimal."""

    status: SolveStatus
    objective: float | None = None
    assignment: Mapping[int, float] = field(default_factory=dict)

    def value(self, var_id: int) -> float:
        return self.assignment[var_id]


@dataclass(frozen=True)
class _Arrays:
    """Dense numpy view of a problem, shared by the solver paths."""

    c: np.ndarray          # (n,) objective
    a: np.ndarray          # (m, n) row coefficients
    senses: tuple[RowSense, ...]
    b: np.ndarray          # (m,)
    lower: np.ndarray      # (n,)
    upper: np.ndarray      # (n,) may contain +inf
    binary: np.ndarray     # (n,) bool mask


class MilpProblem:
    """Linear mixed-integer minimization model.

    Variables are handed out as integer ids; constraint terms reference
    those ids.  Duplicate variables inside one row are aggregated on entry
    so stored rows are always in reduced form.
    """

    def __init__(self, name: str = "problem"):
        self.name = name
        self._variables: list[VariableDef] = []
        self._constraints: list[LinearConstraint] = []
        self._objective: dict[int, float] = {}
        self._arrays: _Arrays | None = None

    # -- construction -------------------------------------------------

    def add_variable(
        self,
        name: str,
        lower: float = 0.0,
        upper: float = math.inf,
        kind: VarKind = VarKind.CONTINUOUS,
    ) -> int:
        if math.isnan(lower) or math.isnan(upper) or math.isinf(lower):
            raise ValueError(f"variable {name!r}: lower bound must be finite")
        if lower > upper:
            raise ValueError(f"variable {name!r}: lower bound {lower} exceeds upper {upper}")
        if kind is VarKind.BINARY and not (0.0 <= lower and upper <= 1.0):
            raise ValueError(f"binary variable {name!r} must have bounds inside [0, 1]")
        var_id = len(self._variables)
        self._variables.append(VariableDef(var_id, name, float(lower), float(upper), kind))
        self._arrays = None
        return var_id

    def add_constraint(
        self,
        terms: Iterable[tuple[int, float]],
        sense: RowSense,
        rhs: float,
        label: str = "",
    ) -> int:
        agg: dict[int, float] = {}
        for var_id, coeff in terms:
            self._check_var(var_id)
            if not math.isfinite(coeff):
                raise ValueError(f"row {label!r}: non-finite coefficient on variable {var_id}")
            agg[var_id] = agg.get(var_id, 0.0) + float(coeff)
        if not math.isfinite(rhs):
            raise ValueError(f"row {label!r}: non-finite right-hand side")
        row_id = len(self._constraints)
        if not label:
            label = f"row{row_id}"
        self._constraints.append(
            LinearConstraint(tuple(sorted(agg.items())), sense, float(rhs), label)
        )
        self._arrays = None
        return row_id

    def add_objective_term(self, var_id: int, coeff: float) -> None:
        self._check_var(var_id)
        if not math.isfinite(coeff):
            raise ValueError(f"non-finite objective coefficient on variable {var_id}")
        self._objective[var_id] = self._objective.get(var_id, 0.0) + float(coeff)
        self._arrays = None

    def set_objective(self, terms: Iterable[tuple[int, float]]) -> None:
        self._objective = {}
        for var_id, coeff in terms:
            self.add_objective_term(var_id, coeff)

    def copy(self) -> "MilpProblem":
        clone = MilpProblem(self.name)
        clone._variables = list(self._variables)
        clone._constraints = list(self._constraints)
        clone._objective = dict(self._objective)
        return clone

    # -- inspection ---------------------------------------------------

    @property
    def variables(self) -> Sequence[VariableDef]:
        return tuple(self._variables)

    @property
    def constraints(self) -> Sequence[LinearConstraint]:
        return tuple(self._constraints)

    @property
    def objective(self) -> Mapping[int, float]:
        return dict(self._objective)

    @property
    def num_variables(self) -> int:
        return len(self._variables)

    @property
    def num_constraints(self) -> int:
        return len(self._constraints)

    def variable(self, var_id: int) -> VariableDef:
        self._check_var(var_id)
        return self._variables[var_id]

    def find_variable(self, name: str) -> VariableDef | None:
        for var in self._variables:
            if var.name == name:
                return var
        return None

    def constraint_by_label(self, label: str) -> tuple[int, LinearConstraint]:
        hits = [(i, c) for i, c in enumerate(self._constraints) if c.label == label]
        if not hits:
            raise KeyError(f"no constraint labelled {label!r}")
        if len(hits) > 1:
            raise KeyError(f"constraint label {label!r} is ambiguous ({len(hits)} rows)")
        return hits[0]

    def objective_value(self, assignment: Mapping[int, float]) -> float:
        return sum(coeff * assignment[var_id] for var_id, coeff in self._objective.items())

    def _check_var(self, var_id: int) -> None:
        if not (0 <= var_id < len(self._variables)):
            raise KeyError(f"unknown variable id {var_id}")

    def to_arrays(self) -> _Arrays:
        """Dense representation; cached until the problem next mutates."""
        if self._arrays is None:
            n = len(self._variables)
            m = len(self._constraints)
            c = np.zeros(n)
            for var_id, coeff in self._objective.items():
                c[var_id] = coeff
            a = np.zeros((m, n))
            b = np.zeros(m)
            senses = []
            for i, row in enumerate(self._constraints):
                for var_id, coeff in row.terms:
                    a[i, var_id] = coeff
                b[i] = row.rhs
                senses.append(row.sense)
            lower = np.array([v.lower for v in self._variables]) if n else np.zeros(0)
            upper = np.array([v.upper for v in self._variables]) if n else np.zeros(0)
            binary = np.array([v.kind is VarKind.BINARY for v in self._variables], dtype=bool)
            self._arrays = _Arrays(c, a, tuple(senses), b, lower, upper, binary)
        return self._arrays


def check_solution(
    problem: MilpProblem,
    assignment: Mapping[int, float],
    feas_tol: float = 1e-6,
    int_tol: float = 1e-6,
) -> list[str]:
    """Independent feasibility audit of an assignment against the raw rows.

    Deliberately ignores any solver state: it re-reads the problem's own
    constraint list and bounds.  Returns one message per violation.
    """
    violations: list[str] = []
    for var in problem.variables:
        x = assignment[var.id]
        if x < var.lower - feas_tol or x > var.upper + feas_tol:
            violations.append(
                f"variable {var.name}: value {x} outside bounds [{var.lower}, {var.upper}]"
            )
        if var.kind is VarKind.BINARY and abs(x - round(x)) > int_tol:
            violations.append(f"variable {var.name}: value {x} not integral")
    for row in problem.constraints:
        lhs = sum(coeff * assignment[var_id] for var_id, coeff in row.terms)
        if row.sense is RowSense.LE and lhs > row.rhs + feas_tol:
            violations.append(f"row {row.label}: {lhs} > {row.rhs}")
        elif row.sense is RowSense.GE and lhs < row.rhs - feas_tol:
            violations.append(f"row {row.label}: {lhs} < {row.rhs}")
        elif row.sense is RowSense.EQ and abs(lhs - row.rhs) > feas_tol:
            violations.append(f"row {row.label}: {lhs} != {row.rhs}")
    return violations
