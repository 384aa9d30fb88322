"""Independent checkers used by the test suite.

``oracle_solve`` decides a canonical LP by brute force over every basis of
[A | I] instead of pivoting, so it shares no code path with the solver.
``simulate_delta_ii`` measures an infeasibility-index change by actually
performing the pivot, the ground truth the O(m+n) prediction must match.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import TooLarge, ZeroPivot
from .tableau import Tableau

MAX_DIMENSION = 24
_SINGULAR_TOL = 1e-10


@dataclass
class OracleVerdict:
    """Outcome of the exhaustive solve.

    status is "optimal", "unbounded" or "infeasible"; objective and x are
    set for "optimal" (x is the best basic point found).
    """

    status: str
    objective: float | None = None
    x: np.ndarray | None = None


def oracle_solve(A, b, c, tol: float = 1e-9) -> OracleVerdict:
    """Decide max c.x s.t. A.x <= b, x >= 0 by enumerating all bases.

    Every size-m column subset of E = [A | I] is solved for the basic
    point; feasibility is nonnegativity of the basic values.  From each
    feasible basis the reduced costs are checked: a positive one whose
    entering direction never blocks proves unboundedness.  Exponential by
    design, guarded by m + n <= MAX_DIMENSION.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    m, n = A.shape
    if m + n > MAX_DIMENSION:
        raise TooLarge(f"m + n = {m + n} exceeds oracle guard {MAX_DIMENSION}")
    E = np.hstack([A, np.eye(m)])
    cfull = np.concatenate([c, np.zeros(m)])

    best_obj = None
    best_x = None
    found_feasible = False

    for basis in combinations(range(n + m), m):
        B = E[:, basis]
        if abs(np.linalg.det(B)) <= _SINGULAR_TOL:
            continue
        z = np.linalg.solve(B, b)
        if np.any(z < -tol):
            continue
        found_feasible = True
        w = np.zeros(n + m)
        w[list(basis)] = z
        obj = float(cfull @ w)
        if best_obj is None or obj > best_obj:
            best_obj = obj
            best_x = w[:n].copy()
        # Unboundedness: an improving nonbasic direction nothing blocks.
        yb = np.linalg.solve(B.T, cfull[list(basis)])
        for jcol in range(n + m):
            if jcol in basis:
                continue
            reduced = cfull[jcol] - float(yb @ E[:, jcol])
            if reduced > tol:
                direction = np.linalg.solve(B, E[:, jcol])
                if np.all(direction <= tol):
                    return OracleVerdict(status="unbounded")

    if not found_feasible:
        return OracleVerdict(status="infeasible")
    return OracleVerdict(status="optimal", objective=best_obj, x=best_x)


def simulate_delta_ii(t: Tableau, i: int, j: int) -> int:
    """Infeasibility-index change measured by performing the pivot."""
    if abs(t.alpha[i, j]) <= t.tol:
        raise ZeroPivot(f"alpha[{i}, {j}] is zero within tol")
    return t.pivot(i, j).infeasibility_index() - t.infeasibility_index()
