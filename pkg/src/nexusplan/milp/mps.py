"""Fixed-format MPS export and the external-solver adapter.

Row and column identifiers are generated (``R0000001`` / ``C0000001``) so
they always fit the 8-character fields of classic fixed-format MPS; the
original names are preserved in comment lines at the top of the file.  The
adapter contract is: the adapter program is invoked as

    <command> <problem.mps> <result.json>

and must write a JSON document ``{"status": "optimal" | "infeasible" |
"unbounded" | "iteration_limit", "objective": <number>, "values":
{"C0000001": <number>, ...}}``.  Values may equally be keyed by the original
variable names.  The objective is recomputed locally from the returned
values, so a solver reporting in a different convention cannot skew results.
"""

from __future__ import annotations

import json
import math
import subprocess
import tempfile
from pathlib import Path
from typing import IO

from .problem import MilpProblem, RowSense, SolveResult, SolveStatus, VarKind

_SENSE_CODE = {RowSense.LE: "L", RowSense.GE: "G", RowSense.EQ: "E"}


class ExternalSolverError(RuntimeError):
    """The adapter process failed or returned an unusable result."""


def _num(value: float) -> str:
    """Render a number inside the 12-character MPS value field."""
    for fmt in ("%.10G", "%.8G", "%.6G"):
        text = fmt % value
        if len(text) <= 12:
            return text
    return "%.5E" % value


def _col_name(index: int) -> str:
    return f"C{index + 1:07d}"


def _row_name(index: int) -> str:
    return f"R{index + 1:07d}"


def write_mps(problem: MilpProblem, stream: IO[str]) -> None:
    """Write the problem in fixed-format MPS (minimization convention)."""
    w = stream.write
    w(f"* generated by nexusplan; minimize {problem.name}\n")
    for i, var in enumerate(problem.variables):
        w(f"* column {_col_name(i)} = {var.name}\n")
    for i, row in enumerate(problem.constraints):
        w(f"* row    {_row_name(i)} = {row.label}\n")

    w(f"{'NAME':<14s}{problem.name[:60]}\n")
    w("ROWS\n")
    w(" N  OBJ\n")
    for i, row in enumerate(problem.constraints):
        w(f" {_SENSE_CODE[row.sense]:<2s} {_row_name(i):<8s}\n")

    # terms grouped per column, objective first
    col_terms: dict[int, list[tuple[str, float]]] = {v.id: [] for v in problem.variables}
    for var_id, coeff in problem.objective.items():
        if coeff != 0.0:
            col_terms[var_id].append(("OBJ", coeff))
    for i, row in enumerate(problem.constraints):
        for var_id, coeff in row.terms:
            if coeff != 0.0:
                col_terms[var_id].append((_row_name(i), coeff))

    w("COLUMNS\n")
    in_integer_block = False
    marker = 0
    for var in problem.variables:
        want_integer = var.kind is VarKind.BINARY
        if want_integer != in_integer_block:
            kind = "'INTORG'" if want_integer else "'INTEND'"
            w(f"    {f'M{marker:07d}':<10s}{'MARKER':<25s}{kind}\n")
            marker += 1
            in_integer_block = want_integer
        for row_name, coeff in col_terms[var.id]:
            w(f"    {_col_name(var.id):<10s}{row_name:<10s}{_num(coeff)}\n")
    if in_integer_block:
        w(f"    {f'M{marker:07d}':<10s}{'MARKER':<25s}'INTEND'\n")

    w("RHS\n")
    for i, row in enumerate(problem.constraints):
        if row.rhs != 0.0:
            w(f"    {'RHS':<10s}{_row_name(i):<10s}{_num(row.rhs)}\n")

    w("BOUNDS\n")
    for var in problem.variables:
        name = _col_name(var.id)
        if var.lower == var.upper:
            w(f" FX {'BND':<8s}  {name:<10s}{_num(var.lower)}\n")
            continue
        if var.kind is VarKind.BINARY:
            if var.lower != 0.0:
                w(f" LO {'BND':<8s}  {name:<10s}{_num(var.lower)}\n")
            w(f" UP {'BND':<8s}  {name:<10s}{_num(var.upper)}\n")
            continue
        if var.lower != 0.0:
            w(f" LO {'BND':<8s}  {name:<10s}{_num(var.lower)}\n")
        if math.isfinite(var.upper):
            w(f" UP {'BND':<8s}  {name:<10s}{_num(var.upper)}\n")
    w("ENDATA\n")


def mps_string(problem: MilpProblem) -> str:
    import io

    buf = io.StringIO()
    write_mps(problem, buf)
    return buf.getvalue()


_STATUS_MAP = {
    "optimal": SolveStatus.OPTIMAL,
    "infeasible": SolveStatus.INFEASIBLE,
    "unbounded": SolveStatus.UNBOUNDED,
    "iteration_limit": SolveStatus.ITERATION_LIMIT,
    "limit": SolveStatus.ITERATION_LIMIT,
}


def solve_with_external(
    problem: MilpProblem, command: str, timeout: float | None = None
) -> SolveResult:
    """Round-trip the problem through an external solver adapter."""
    with tempfile.TemporaryDirectory(prefix="nexusplan-mps-") as tmp:
        mps_path = Path(tmp) / "problem.mps"
        out_path = Path(tmp) / "result.json"
        with open(mps_path, "w") as fh:
            write_mps(problem, fh)
        try:
            proc = subprocess.run(
                [command, str(mps_path), str(out_path)],
                capture_output=True,
                text=True,
                timeout=timeout,
            )
        except (OSError, subprocess.TimeoutExpired) as exc:
            raise ExternalSolverError(f"external solver failed to run: {exc}") from exc
        if proc.returncode != 0:
            raise ExternalSolverError(
                f"external solver exited with {proc.returncode}: {proc.stderr.strip()}"
            )
        try:
            payload = json.loads(out_path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ExternalSolverError(f"unreadable adapter result: {exc}") from exc

    status_name = str(payload.get("status", "")).lower()
    if status_name not in _STATUS_MAP:
        raise ExternalSolverError(f"unknown adapter status {status_name!r}")
    status = _STATUS_MAP[status_name]
    if status is not SolveStatus.OPTIMAL:
        return SolveResult(status)

    values = payload.get("values")
    if not isinstance(values, dict):
        raise ExternalSolverError("adapter result missing 'values' mapping")
    by_name = {var.name: var.id for var in problem.variables}
    by_col = {_col_name(var.id): var.id for var in problem.variables}
    assignment: dict[int, float] = {var.id: 0.0 for var in problem.variables}
    for key, value in values.items():
        if key in by_col:
            assignment[by_col[key]] = float(value)
        elif key in by_name:
            assignment[by_name[key]] = float(value)
        else:
            raise ExternalSolverError(f"adapter reported unknown variable {key!r}")
    objective = problem.objective_value(assignment)
    return SolveResult(SolveStatus.OPTIMAL, objective, assignment)
