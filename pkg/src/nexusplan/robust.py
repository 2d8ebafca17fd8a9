"""Budget-of-uncertainty robust counterparts for ranged row coefficients.

Each uncertain coefficient lives in a symmetric interval
``[nominal - deviation, nominal + deviation]``.  Per protected row the
adversary may push at most ``gamma * (number of uncertain entries)`` of those
coefficients to their extremes (fractionally for the last one), and the
counterpart hedges against the worst such choice by the standard dual
reformulation: one scalar ``z`` per row, one ``p`` per uncertain entry, the
protection term ``gamma_row * z + sum(p)`` charged against the row's slack,
and linking rows ``z + p >= deviation * |x|``.  The absolute value is
linearized through the variable's sign restriction, so variables that can
take both signs are rejected rather than silently mishandled.
"""

from __future__ import annotations

from dataclasses import dataclass

from .milp import MilpProblem, RowSense

__all__ = ["UncertainCoefficient", "RobustBudget", "robustify"]


@dataclass(frozen=True, slots=True)
class UncertainCoefficient:
    """Symmetric ranged uncertainty on one row coefficient."""

    row_label: str
    var_id: int
    nominal: float
    deviation: float

    def __post_init__(self) -> None:
        if self.deviation < 0:
            raise ValueError(
                f"deviation must be nonnegative, got {self.deviation} "
                f"for {self.row_label!r}"
            )


@dataclass(frozen=True, slots=True)
class RobustBudget:
    """Normalized conservativity dial: 0 = nominal, 1 = full interval worst case."""

    gamma: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.gamma <= 1.0):
            raise ValueError(f"gamma must lie in [0, 1], got {self.gamma}")


def robustify(
    problem: MilpProblem,
    uncertain: list[UncertainCoefficient],
    budget: RobustBudget,
) -> MilpProblem:
    """Return a fresh problem immunized against the budgeted coefficient play.

    The input problem is never touched.  Protected rows must be inequalities;
    every referenced variable must already carry the nominal coefficient in
    the row and must be sign-restricted by its bounds.
    """
    out = problem.copy()
    if not uncertain:
        return out

    by_row: dict[str, list[UncertainCoefficient]] = {}
    for entry in uncertain:
        by_row.setdefault(entry.row_label, []).append(entry)

    rebuilt: dict[int, list[tuple[int, float]]] = {}
    for label, entries in by_row.items():
        row_index, row = out.constraint_by_label(label)
        if row.sense is RowSense.EQ:
            raise ValueError(f"row {label!r} is an equality; ranged uncertainty needs slack")
        coeffs = dict(row.terms)
        gamma_row = budget.gamma * len(entries)
        # slack-consuming direction: LE rows gain protection, GE rows lose it
        protect_sign = 1.0 if row.sense is RowSense.LE else -1.0

        z_id = out.add_variable(f"__rob_z[{label}]", lower=0.0)
        extra_terms: list[tuple[int, float]] = [(z_id, protect_sign * gamma_row)]
        for entry in entries:
            var = out.variable(entry.var_id)
            if entry.var_id not in coeffs:
                raise ValueError(
                    f"row {label!r} has no term for variable {var.name!r}"
                )
            if abs(coeffs[entry.var_id] - entry.nominal) > 1e-9 * (1 + abs(entry.nominal)):
                raise ValueError(
                    f"row {label!r}: stored coefficient {coeffs[entry.var_id]} for "
                    f"{var.name!r} does not match declared nominal {entry.nominal}"
                )
            if var.lower >= 0.0:
                x_sign = 1.0
            elif var.upper <= 0.0:
                x_sign = -1.0
            else:
                raise ValueError(
                    f"variable {var.name!r} in uncertain row {label!r} can take both "
                    "signs; bound it before robustification"
                )
            p_id = out.add_variable(f"__rob_p[{label},{var.name}]", lower=0.0)
            extra_terms.append((p_id, protect_sign))
            # z + p >= deviation * |x|
            out.add_constraint(
                [(z_id, 1.0), (p_id, 1.0), (entry.var_id, -entry.deviation * x_sign)],
                RowSense.GE,
                0.0,
                label=f"{label}__protect[{var.name}]",
            )
        rebuilt[row_index] = list(row.terms) + extra_terms

    # rewrite the protected rows in place, preserving order and labels
    final = MilpProblem(out.name)
    for var in out.variables:
        final.add_variable(var.name, var.lower, var.upper, var.kind)
    for index, row in enumerate(out.constraints):
        terms = rebuilt.get(index, list(row.terms))
        final.add_constraint(terms, row.sense, row.rhs, row.label)
    final.set_objective(list(out.objective.items()))
    return final
