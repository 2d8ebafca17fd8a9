"""Desk-scale linear and mixed-integer programming engine."""

from .branch_bound import MilpOptions, solve_milp
from .mps import ExternalSolverError, mps_string, solve_with_external, write_mps
from .problem import (
    LinearConstraint,
    MilpProblem,
    RowSense,
    SolveResult,
    SolveStatus,
    VariableDef,
    VarKind,
    check_solution,
)
from .simplex import SimplexOptions, solve_lp, solve_lp_arrays

__all__ = [
    "ExternalSolverError",
    "LinearConstraint",
    "MilpOptions",
    "MilpProblem",
    "RowSense",
    "SimplexOptions",
    "SolveResult",
    "SolveStatus",
    "VariableDef",
    "VarKind",
    "check_solution",
    "mps_string",
    "solve_lp",
    "solve_lp_arrays",
    "solve_milp",
    "solve_with_external",
    "write_mps",
]
