"""Best-bound branch and bound over the bounded-variable simplex.

Nodes are LP relaxations with tightened binary bounds.  Every node is solved
when it is created and enters a min-heap keyed by its LP objective, so the
search always expands the globally least lower bound; branching picks the
most fractional binary (ties to the lowest variable id).  The heap tie-break
is an insertion counter, which makes the whole search deterministic.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

import numpy as np

from .problem import MilpProblem, SolveResult, SolveStatus
from .simplex import SimplexOptions, solve_lp_arrays


@dataclass(frozen=True)
class MilpOptions:
    max_nodes: int = 100_000
    int_tol: float = 1e-6
    obj_tol: float = 1e-9
    simplex: SimplexOptions = field(default_factory=SimplexOptions)


def solve_milp(problem: MilpProblem, options: MilpOptions | None = None) -> SolveResult:
    """Minimize with integrality enforced on the problem's binary variables."""
    if problem.num_variables == 0:
        raise ValueError("problem has no variables")
    opt = options or MilpOptions()
    arrays = problem.to_arrays()
    binaries = np.flatnonzero(arrays.binary)

    nodes_left = [opt.max_nodes]

    def solve_node(lower: np.ndarray, upper: np.ndarray):
        nodes_left[0] -= 1
        return solve_lp_arrays(
            arrays.c, arrays.a, arrays.senses, arrays.b, lower, upper, opt.simplex
        )

    def fractional_binary(x: np.ndarray) -> int | None:
        if binaries.size == 0:
            return None
        frac = np.abs(x[binaries] - np.round(x[binaries]))
        worst = int(np.argmax(frac))
        if frac[worst] <= opt.int_tol:
            return None
        # ties go to the lowest variable id
        best = binaries[frac >= frac[worst] - 1e-15]
        return int(best[0])

    status, obj, x = solve_node(arrays.lower, arrays.upper)
    if status is not SolveStatus.OPTIMAL:
        return SolveResult(status)

    incumbent_obj = np.inf
    incumbent_x: np.ndarray | None = None
    heap: list[tuple[float, int, np.ndarray, np.ndarray, np.ndarray]] = []
    counter = 0

    j = fractional_binary(x)
    if j is None:
        incumbent_obj, incumbent_x = obj, x
    else:
        heapq.heappush(heap, (obj, counter, arrays.lower, arrays.upper, x))

    while heap:
        bound, _, lower, upper, x = heapq.heappop(heap)
        if bound >= incumbent_obj - opt.obj_tol:
            break  # best-bound order: every remaining node is fathomed too
        j = fractional_binary(x)
        assert j is not None
        for fix_to in (0.0, 1.0):
            if nodes_left[0] <= 0:
                return SolveResult(SolveStatus.ITERATION_LIMIT)
            child_lower = lower.copy()
            child_upper = upper.copy()
            if fix_to == 0.0:
                child_upper[j] = 0.0
            else:
                child_lower[j] = 1.0
            status, obj, cx = solve_node(child_lower, child_upper)
            if status is SolveStatus.INFEASIBLE:
                continue
            if status is SolveStatus.UNBOUNDED:
                return SolveResult(SolveStatus.UNBOUNDED)
            if status is SolveStatus.ITERATION_LIMIT:
                return SolveResult(SolveStatus.ITERATION_LIMIT)
            if obj >= incumbent_obj - opt.obj_tol:
                continue
            if fractional_binary(cx) is None:
                incumbent_obj, incumbent_x = obj, cx
            else:
                counter += 1
                heapq.heappush(heap, (obj, counter, child_lower, child_upper, cx))

    if incumbent_x is None:
        return SolveResult(SolveStatus.INFEASIBLE)
    assignment = {i: float(incumbent_x[i]) for i in range(len(incumbent_x))}
    return SolveResult(SolveStatus.OPTIMAL, float(incumbent_obj), assignment)
