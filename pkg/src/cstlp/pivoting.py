"""Pivot scheme enumeration and selection.

Six schemes are searched in tiers.  The two simplex-like schemes act on a
sign-infeasible row or column and run a guarded ratio test; the two tricky
schemes pivot against the usual sign rules to escape states the simplex
steps cannot leave; the two zero-indicator schemes move along degenerate
rows/columns and only matter when exploring alternative optima.

    tier 1: dual_neg      rows with beta < -tol     (cells -Nn, -Nz)
            primal_pos    columns with gamma > tol  (cells +Pp, +Zp)
    tier 2: primal_tricky cells -Np
            dual_tricky   cells +Np
    tier 3: dual_zero     rows with |beta| <= tol   (cells -Zn, -Zz)
            primal_zero   columns with |gamma| <= tol (cells +Pz, +Zz)

Selection takes the first scheme in the order with any candidate, then the
candidate with the smallest predicted infeasibility-index change, breaking
ties with a lexicographic perturbation rule.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ZeroPivot
from .tableau import Tableau

DUAL_NEG = "dual_neg"
PRIMAL_POS = "primal_pos"
PRIMAL_TRICKY = "primal_tricky"
DUAL_TRICKY = "dual_tricky"
DUAL_ZERO = "dual_zero"
PRIMAL_ZERO = "primal_zero"

DEFAULT_ORDER: tuple[str, ...] = (
    DUAL_NEG,
    PRIMAL_POS,
    PRIMAL_TRICKY,
    DUAL_TRICKY,
    DUAL_ZERO,
    PRIMAL_ZERO,
)

# Scheme tiers; order overrides may permute names inside a tier only.
TIERS: tuple[frozenset[str], ...] = (
    frozenset({DUAL_NEG, PRIMAL_POS}),
    frozenset({PRIMAL_TRICKY, DUAL_TRICKY}),
    frozenset({DUAL_ZERO, PRIMAL_ZERO}),
)

# Admissible cell codes per scheme (see Tableau.cell_type).
SCHEME_CELLS: dict[str, frozenset[str]] = {
    DUAL_NEG: frozenset({"-Nn", "-Nz"}),
    PRIMAL_POS: frozenset({"+Pp", "+Zp"}),
    PRIMAL_TRICKY: frozenset({"-Np"}),
    DUAL_TRICKY: frozenset({"+Np"}),
    DUAL_ZERO: frozenset({"-Zn", "-Zz"}),
    PRIMAL_ZERO: frozenset({"+Pz", "+Zz"}),
}


@dataclass
class PivotCandidate:
    """An admissible pivot cell with its predicted effect.

    ``delta_ii`` is the exact change of the infeasibility index the pivot
    would cause; ``lem`` the absolute objective movement |delta' - delta|.
    """

    i: int
    j: int
    scheme: str
    delta_ii: int | None = None
    lem: float | None = None

    @property
    def tie_key(self) -> tuple[int, int]:
        return (self.i, self.j)


def validate_order(order) -> tuple[str, ...]:
    """Check a scheme order override: all six schemes, tiers kept intact."""
    order = tuple(order)
    if sorted(order) != sorted(DEFAULT_ORDER):
        raise ValueError(f"order must be a permutation of {DEFAULT_ORDER}, got {order}")
    pos = {s: k for k, s in enumerate(order)}
    for earlier, later in zip(TIERS, TIERS[1:]):
        if max(pos[s] for s in earlier) > min(pos[s] for s in later):
            raise ValueError(f"order {order} breaks the scheme tiers")
    return order


def lem(t: Tableau, i: int, j: int) -> float:
    """Objective movement |beta_i * gamma_j / alpha_ij| of the pivot at (i, j)."""
    if abs(t.alpha[i, j]) <= t.tol:
        raise ZeroPivot(f"alpha[{i}, {j}] is zero within tol")
    return abs(t.beta[i] * t.gamma[j] / t.alpha[i, j])


def predicted_delta_ii(t: Tableau, i: int, j: int) -> int:
    """Exact infeasibility-index change of the pivot at (i, j), in O(m+n).

    Recomputes the post-pivot beta/gamma with the same floating-point
    expressions the pivot kernel uses, so the prediction always equals
    pivot-then-recount.
    """
    if abs(t.alpha[i, j]) <= t.tol:
        raise ZeroPivot(f"alpha[{i}, {j}] is zero within tol")
    return int(kernels.predict_delta_ii(t.alpha, t.beta, t.gamma, i, j, t.tol))


def _lex_min_row(t: Tableau, rows: np.ndarray, j: int) -> int:
    """Among ratio-tied rows sharing column j, the perturbation winner.

    Perturbing the current columns by eps^1..eps^n and rows by
    eps^(n+1)..eps^(n+m) turns each tied ratio into the key
    (alpha_i. / alpha_ij over columns, then 1/alpha_ij in the row's own
    slot); the lexicographically smallest key wins.  Keys of distinct rows
    always differ in the row slots, so the winner is unique.
    """
    n, m = t.n, t.m
    piv = t.alpha[rows, j]
    keys = np.zeros((len(rows), n + m))
    keys[:, :n] = t.alpha[rows, :] / piv[:, None]
    keys[np.arange(len(rows)), n + rows] = 1.0 / piv
    order = np.lexsort(keys.T[::-1])
    return int(rows[order[0]])


def _lex_min_col(t: Tableau, cols: np.ndarray, i: int) -> int:
    """Dual analogue of :func:`_lex_min_row` for columns sharing row i."""
    n, m = t.n, t.m
    piv = t.alpha[i, cols]
    keys = np.zeros((len(cols), n + m))
    keys[np.arange(len(cols)), cols] = -1.0 / piv
    keys[:, n:] = t.alpha[:, cols].T / piv[:, None]
    order = np.lexsort(keys.T[::-1])
    return int(cols[order[0]])


def tie_break_lex(t: Tableau, candidates: list[PivotCandidate]) -> PivotCandidate:
    """Resolve a tie among candidates of one scheme with equal delta_ii.

    Candidates sharing a column (positive pivots) or a row (negative
    pivots) are ranked by the lexicographic perturbation keys; anything
    else falls back to the smallest (i, j) in row-major order.
    """
    if len(candidates) == 1:
        return candidates[0]
    js = {c.j for c in candidates}
    if len(js) == 1:
        j = candidates[0].j
        if all(t.alpha[c.i, j] > t.tol for c in candidates):
            win = _lex_min_row(t, np.array([c.i for c in candidates]), j)
            return next(c for c in candidates if c.i == win)
    iis = {c.i for c in candidates}
    if len(iis) == 1:
        i = candidates[0].i
        if all(t.alpha[i, c.j] < -t.tol for c in candidates):
            win = _lex_min_col(t, np.array([c.j for c in candidates]), i)
            return next(c for c in candidates if c.j == win)
    return min(candidates, key=lambda c: c.tie_key)


def _score(t: Tableau, cands: list[PivotCandidate]) -> list[PivotCandidate]:
    """Fill delta_ii and lem for freshly enumerated candidates."""
    if not cands:
        return cands
    rows = np.ascontiguousarray([c.i for c in cands], dtype=np.int64)
    cols = np.ascontiguousarray([c.j for c in cands], dtype=np.int64)
    deltas = kernels.predict_delta_ii_many(t.alpha, t.beta, t.gamma, rows, cols, t.tol)
    for c, d in zip(cands, deltas):
        c.delta_ii = int(d)
        c.lem = float(abs(t.beta[c.i] * t.gamma[c.j] / t.alpha[c.i, c.j]))
    return cands


def _ratio_tie(ratios: np.ndarray, tol: float) -> np.ndarray:
    """Indices (into ratios) within tol of the minimum ratio."""
    rmin = ratios.min()
    return np.nonzero(np.abs(ratios - rmin) <= tol)[0]


def enumerate_candidates(t: Tableau, scheme: str) -> list[PivotCandidate]:
    """All admissible candidates of one scheme, scored and deduplicated.

    The simplex-like schemes produce at most one candidate per driving
    column (primal family: the ratio-test blocking row) or per driving row
    (dual family: the blocking column); the tricky schemes return every
    admissible cell.
    """
    alpha, beta, gamma, tol = t.alpha, t.beta, t.gamma, t.tol
    cands: list[PivotCandidate] = []

    if scheme in (PRIMAL_POS, PRIMAL_ZERO):
        if scheme == PRIMAL_POS:
            driving = np.nonzero(gamma > tol)[0]
        else:
            driving = np.nonzero(np.abs(gamma) <= tol)[0]
        eligible_rows = beta >= -tol
        for j in driving:
            rows = np.nonzero((alpha[:, j] > tol) & eligible_rows)[0]
            if rows.size == 0:
                continue
            ratios = beta[rows] / alpha[rows, j]
            tied = rows[_ratio_tie(ratios, tol)]
            i = tied[0] if tied.size == 1 else _lex_min_row(t, tied, int(j))
            cands.append(PivotCandidate(int(i), int(j), scheme))
    elif scheme in (DUAL_NEG, DUAL_ZERO):
        if scheme == DUAL_NEG:
            driving = np.nonzero(beta < -tol)[0]
        else:
            driving = np.nonzero(np.abs(beta) <= tol)[0]
        eligible_cols = gamma <= tol
        for i in driving:
            cols = np.nonzero((alpha[i, :] < -tol) & eligible_cols)[0]
            if cols.size == 0:
                continue
            ratios = gamma[cols] / alpha[i, cols]
            tied = cols[_ratio_tie(ratios, tol)]
            j = tied[0] if tied.size == 1 else _lex_min_col(t, tied, int(i))
            cands.append(PivotCandidate(int(i), int(j), scheme))
    elif scheme in (PRIMAL_TRICKY, DUAL_TRICKY):
        sign = -1.0 if scheme == PRIMAL_TRICKY else 1.0
        cells = (sign * alpha > tol) & (beta[:, None] < -tol) & (gamma[None, :] > tol)
        for i, j in np.argwhere(cells):
            cands.append(PivotCandidate(int(i), int(j), scheme))
    else:
        raise ValueError(f"unknown scheme {scheme!r}")

    return _score(t, cands)


def select_pivot(t: Tableau, order=None) -> PivotCandidate | None:
    """Choose the next pivot, or None when no scheme has a candidate.

    Schemes are tried in order; within the first nonempty one, the
    candidate with minimal delta_ii wins, ties resolved by
    :func:`tie_break_lex`.  The choice never depends on enumeration order.
    """
    order = validate_order(order) if order is not None else DEFAULT_ORDER
    for scheme in order:
        cands = enumerate_candidates(t, scheme)
        if not cands:
            continue
        best = min(c.delta_ii for c in cands)
        tied = [c for c in cands if c.delta_ii == best]
        return tie_break_lex(t, tied)
    return None
