"""Two-phase primal simplex with bounded variables on a dense tableau.

The solver keeps every structural bound implicit (nonbasic variables rest at
either bound and may flip without a basis change), which keeps the tableau at
one row per constraint.  Pricing is Dantzig's rule for speed; after a long
streak of degenerate steps it switches to Bland's rule until the objective
moves again, which breaks cycles while keeping the pivot sequence a pure
function of the input.  Infeasibility is certified by a positive phase-1
optimum and unboundedness by a cost-improving ray with no blocking bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .problem import MilpProblem, RowSense, SolveResult, SolveStatus

_AT_LOWER = 0
_AT_UPPER = 1
_BASIC = 2


@dataclass(frozen=True)
class SimplexOptions:
    max_pivots: int = 50_000
    feas_tol: float = 1e-7
    opt_tol: float = 1e-9
    pivot_tol: float = 1e-9
    bland_after: int = 400  # consecutive degenerate pivots before anti-cycling kicks in


@dataclass
class _Tableau:
    t: np.ndarray          # (m, ncol) current tableau rows
    a0: np.ndarray         # (m, ncol) original rows, for the final exact refit
    b0: np.ndarray         # (m,) original normalized right-hand side
    xb: np.ndarray         # (m,) basic variable values
    basis: np.ndarray      # (m,) column index basic in each row
    vstat: np.ndarray      # (ncol,) lower/upper/basic state
    ub: np.ndarray         # (ncol,) bound ranges after shifting lower bounds to 0
    enterable: np.ndarray  # (ncol,) False for artificial columns
    n_struct: int
    art_start: int


class _PivotBudget(Exception):
    pass


def solve_lp(problem: MilpProblem, options: SimplexOptions | None = None) -> SolveResult:
    """Solve the continuous relaxation of ``problem`` (binaries become [0,1])."""
    if problem.num_variables == 0:
        raise ValueError("problem has no variables")
    arrays = problem.to_arrays()
    status, obj, x = solve_lp_arrays(
        arrays.c, arrays.a, arrays.senses, arrays.b, arrays.lower, arrays.upper, options
    )
    if status is not SolveStatus.OPTIMAL:
        return SolveResult(status)
    return SolveResult(status, obj, {i: float(x[i]) for i in range(len(x))})


def solve_lp_arrays(
    c: np.ndarray,
    a: np.ndarray,
    senses: Sequence[RowSense],
    b: np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
    options: SimplexOptions | None = None,
) -> tuple[SolveStatus, float | None, np.ndarray | None]:
    """Array-level entry point; bounds may be patched per call (used by the
    branch-and-bound search, which never mutates the parent problem)."""
    opt = options or SimplexOptions()
    c = np.asarray(c, dtype=float)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    m, n = a.shape

    if np.any(lower > upper):
        return SolveStatus.INFEASIBLE, None, None

    # Fixed variables are substituted out; remaining ones are shifted to 0.
    keep = (upper - lower) > 0.0
    x_base = lower.copy()
    b_shift = b - a @ x_base
    obj_const = float(c @ x_base)

    if not np.any(keep):
        if _rows_feasible(np.zeros((m, 0)), senses, b_shift, np.zeros(0), opt.feas_tol):
            return SolveStatus.OPTIMAL, obj_const, x_base
        return SolveStatus.INFEASIBLE, None, None

    a_k = a[:, keep]
    c_k = c[keep]
    u_k = (upper - lower)[keep]

    tab = _build_tableau(a_k, senses, b_shift, u_k)
    budget = [opt.max_pivots]

    try:
        if tab.art_start < tab.t.shape[1]:
            feasible = _phase_one(tab, opt, budget)
            if not feasible:
                return SolveStatus.INFEASIBLE, None, None
        status = _phase_two(tab, c_k, opt, budget)
    except _PivotBudget:
        return SolveStatus.ITERATION_LIMIT, None, None
    if status is SolveStatus.UNBOUNDED:
        return SolveStatus.UNBOUNDED, None, None

    x_k = _extract(tab, len(c_k))
    x = x_base.copy()
    x[keep] += x_k
    return SolveStatus.OPTIMAL, obj_const + float(c_k @ x_k), x


def _rows_feasible(a, senses, b, x, tol) -> bool:
    lhs = a @ x if a.size else np.zeros(len(b))
    for i, sense in enumerate(senses):
        if sense is RowSense.LE and lhs[i] > b[i] + tol:
            return False
        if sense is RowSense.GE and lhs[i] < b[i] - tol:
            return False
        if sense is RowSense.EQ and abs(lhs[i] - b[i]) > tol:
            return False
    return True


def _build_tableau(a_k: np.ndarray, senses, b_shift: np.ndarray, u_k: np.ndarray) -> _Tableau:
    m, n = a_k.shape
    slack_of = np.full(m, -1, dtype=int)
    n_slack = 0
    for i, sense in enumerate(senses):
        if sense is not RowSense.EQ:
            slack_of[i] = n + n_slack
            n_slack += 1

    # Normalize row signs so every right-hand side is nonnegative; a row whose
    # slack column ends up at +1 self-starts, the rest get an artificial.
    flip = b_shift < 0
    rows_art = []
    for i, sense in enumerate(senses):
        slack_sign = 1.0 if sense is RowSense.LE else -1.0
        if sense is RowSense.EQ or (slack_sign * (-1.0 if flip[i] else 1.0)) < 0:
            rows_art.append(i)

    art_start = n + n_slack
    ncol = art_start + len(rows_art)
    t = np.zeros((m, ncol))
    t[:, :n] = np.where(flip[:, None], -a_k, a_k)
    b0 = np.where(flip, -b_shift, b_shift)
    for i, sense in enumerate(senses):
        if slack_of[i] >= 0:
            sign = 1.0 if sense is RowSense.LE else -1.0
            t[i, slack_of[i]] = -sign if flip[i] else sign

    basis = np.empty(m, dtype=int)
    vstat = np.full(ncol, _AT_LOWER, dtype=np.int8)
    for k, i in enumerate(rows_art):
        t[i, art_start + k] = 1.0
        basis[i] = art_start + k
    for i in range(m):
        if i not in rows_art:
            basis[i] = slack_of[i]
    vstat[basis] = _BASIC

    ub = np.full(ncol, np.inf)
    ub[:n] = u_k
    enterable = np.ones(ncol, dtype=bool)
    enterable[art_start:] = False

    return _Tableau(
        t=t,
        a0=t.copy(),
        b0=b0,
        xb=b0.copy(),
        basis=basis,
        vstat=vstat,
        ub=ub,
        enterable=enterable,
        n_struct=n,
        art_start=art_start,
    )


def _reduced_costs(tab: _Tableau, cost: np.ndarray) -> tuple[np.ndarray, float]:
    cb = cost[tab.basis]
    d = cost - cb @ tab.t
    at_upper = tab.vstat == _AT_UPPER
    obj = float(cb @ tab.xb)
    if np.any(at_upper):
        obj += float(cost[at_upper] @ tab.ub[at_upper])
    return d, obj


def _phase_one(tab: _Tableau, opt: SimplexOptions, budget: list[int]) -> bool:
    cost = np.zeros(tab.t.shape[1])
    cost[tab.art_start:] = 1.0
    d, obj = _reduced_costs(tab, cost)
    scale = 1.0 + float(np.abs(tab.b0).max(initial=0.0))
    status, obj = _iterate(tab, d, obj, opt, budget, stop_below=opt.feas_tol * 0.01 * scale)
    assert status is not SolveStatus.UNBOUNDED  # phase-1 objective is bounded below by 0
    if obj > opt.feas_tol * scale:
        return False
    _evict_artificials(tab, opt)
    return True


def _phase_two(tab: _Tableau, c_k: np.ndarray, opt: SimplexOptions, budget: list[int]) -> SolveStatus:
    cost = np.zeros(tab.t.shape[1])
    cost[: tab.n_struct] = c_k
    d, obj = _reduced_costs(tab, cost)
    status, _ = _iterate(tab, d, obj, opt, budget, stop_below=-math.inf)
    return status


def _iterate(
    tab: _Tableau,
    d: np.ndarray,
    obj: float,
    opt: SimplexOptions,
    budget: list[int],
    stop_below: float,
) -> tuple[SolveStatus, float]:
    t, xb, basis, vstat, ub = tab.t, tab.xb, tab.basis, tab.vstat, tab.ub
    m = t.shape[0]
    bland = False
    degen_streak = 0

    while True:
        if obj < stop_below:
            return SolveStatus.OPTIMAL, obj
        gain = np.where(
            (vstat == _AT_LOWER) & tab.enterable, -d,
            np.where((vstat == _AT_UPPER) & tab.enterable, d, -np.inf),
        )
        if bland:
            eligible = np.flatnonzero(gain > opt.opt_tol)
            if eligible.size == 0:
                return SolveStatus.OPTIMAL, obj
            e = int(eligible[0])
        else:
            e = int(np.argmax(gain))
            if gain[e] <= opt.opt_tol:
                return SolveStatus.OPTIMAL, obj

        if budget[0] <= 0:
            raise _PivotBudget()
        budget[0] -= 1

        sig = 1.0 if vstat[e] == _AT_LOWER else -1.0
        w = sig * t[:, e]

        ratios = np.full(m, np.inf)
        pos = w > opt.pivot_tol
        if np.any(pos):
            ratios[pos] = xb[pos] / w[pos]
        neg = w < -opt.pivot_tol
        if np.any(neg):
            ub_b = ub[basis[neg]]
            room = ub_b - xb[neg]
            finite = np.isfinite(ub_b)
            r_neg = np.full(room.shape, np.inf)
            r_neg[finite] = room[finite] / (-w[neg][finite])
            ratios[neg] = r_neg
        np.maximum(ratios, 0.0, out=ratios)

        t_row = float(ratios.min(initial=np.inf))
        t_flip = float(ub[e])

        if t_flip <= t_row:
            if math.isinf(t_flip):
                return SolveStatus.UNBOUNDED, obj
            # bound-to-bound flip, no basis change
            xb -= t_flip * w
            obj += d[e] * sig * t_flip
            vstat[e] = _AT_UPPER if vstat[e] == _AT_LOWER else _AT_LOWER
            degen_streak = 0
            bland = False
            continue
        if math.isinf(t_row):
            return SolveStatus.UNBOUNDED, obj

        cand = np.flatnonzero(ratios <= t_row + 1e-9)
        if bland:
            r = int(cand[np.argmin(basis[cand])])
        else:
            absw = np.abs(w[cand])
            best = cand[absw >= absw.max() * (1.0 - 1e-9)]
            r = int(best[np.argmin(basis[best])])

        step = t_row
        if step <= 1e-12:
            degen_streak += 1
            if degen_streak > opt.bland_after:
                bland = True
        else:
            degen_streak = 0
            bland = False

        enter_value = (0.0 if vstat[e] == _AT_LOWER else ub[e]) + sig * step
        leaving = int(basis[r])
        obj += d[e] * sig * step
        xb -= step * w
        vstat[leaving] = _AT_LOWER if w[r] > 0 else _AT_UPPER
        basis[r] = e
        vstat[e] = _BASIC
        xb[r] = enter_value

        piv = t[r, e]
        t[r] /= piv
        col = t[:, e].copy()
        col[r] = 0.0
        t -= np.outer(col, t[r])
        d -= d[e] * t[r]


def _evict_artificials(tab: _Tableau, opt: SimplexOptions) -> None:
    """Pivot leftover artificials out of the basis; drop rows that prove redundant."""
    drop_rows = []
    for r in range(tab.t.shape[0]):
        if tab.basis[r] < tab.art_start:
            continue
        row = tab.t[r, : tab.art_start]
        nonbasic = tab.vstat[: tab.art_start] != _BASIC
        usable = np.flatnonzero(nonbasic & (np.abs(row) > 1e-7))
        if usable.size == 0:
            drop_rows.append(r)
            continue
        e = int(usable[0])
        # degenerate swap: the entering variable keeps its current bound value
        enter_value = 0.0 if tab.vstat[e] == _AT_LOWER else tab.ub[e]
        tab.basis[r] = e
        tab.vstat[e] = _BASIC
        tab.xb[r] = enter_value
        piv = tab.t[r, e]
        tab.t[r] /= piv
        col = tab.t[:, e].copy()
        col[r] = 0.0
        tab.t -= np.outer(col, tab.t[r])
    if drop_rows:
        keep = np.setdiff1d(np.arange(tab.t.shape[0]), drop_rows)
        tab.t = tab.t[keep]
        tab.a0 = tab.a0[keep]
        tab.b0 = tab.b0[keep]
        tab.xb = tab.xb[keep]
        tab.basis = tab.basis[keep]


def _extract(tab: _Tableau, n_struct: int) -> np.ndarray:
    """Read the structural solution, refitting basic values against the
    original (un-pivoted) rows to shed accumulated tableau drift."""
    ncol = tab.t.shape[1]
    x_ext = np.zeros(ncol)
    at_upper = np.flatnonzero(tab.vstat == _AT_UPPER)
    x_ext[at_upper] = tab.ub[at_upper]
    rhs = tab.b0 - tab.a0[:, at_upper] @ tab.ub[at_upper] if at_upper.size else tab.b0.copy()
    basis_cols = tab.a0[:, tab.basis]
    try:
        xb = np.linalg.solve(basis_cols, rhs)
    except np.linalg.LinAlgError:
        xb = tab.xb
    x_ext[tab.basis] = xb
    return x_ext[:n_struct]
