"""Pure-numpy kernel fallback.

Mirrors ``_core.pyx`` operation for operation.  Every floating-point
expression here must round exactly like the compiled loop (one multiply,
one subtract, no fused multiply-add, divisions shared through the same
precomputed ratios), because callers rely on the two backends producing
bit-identical tableaus and identical infeasibility counts.
"""

from __future__ import annotations

import numpy as np

COMPILED = False


def pivot_update(
    alpha: np.ndarray,
    beta: np.ndarray,
    gamma: np.ndarray,
    i: int,
    j: int,
    delta: float,
) -> float:
    """Apply the pivot exchange at (i, j) in place and return the new delta.

    alpha is (m, n) C-contiguous float64, beta (m,), gamma (n,).  The pivot
    entry must be nonzero; callers guard tolerance.
    """
    piv = alpha[i, j]
    prow = alpha[i] / piv
    rb = beta[i] / piv
    colj = alpha[:, j].copy()
    gj = gamma[j]

    alpha -= np.outer(colj, prow)
    beta -= colj * rb
    gamma -= gj * prow

    alpha[i] = prow
    alpha[:, j] = -(colj / piv)
    alpha[i, j] = 1.0 / piv
    beta[i] = rb
    gamma[j] = -(gj / piv)
    return delta - gj * rb


def count_infeasible(beta: np.ndarray, gamma: np.ndarray, tol: float) -> int:
    """Number of primal-infeasible rows plus dual-infeasible columns."""
    return int(np.count_nonzero(beta < -tol) + np.count_nonzero(gamma > tol))


def predict_delta_ii(
    alpha: np.ndarray,
    beta: np.ndarray,
    gamma: np.ndarray,
    i: int,
    j: int,
    tol: float,
) -> int:
    """Change in the infeasibility index a pivot at (i, j) would cause.

    O(m + n): recomputes only the post-pivot beta and gamma, with the exact
    expression sequence of :func:`pivot_update`, and counts sign flips
    across the tolerance thresholds.
    """
    piv = alpha[i, j]
    rb = beta[i] / piv
    newbeta = beta - alpha[:, j] * rb
    newbeta[i] = rb
    prow = alpha[i] / piv
    gj = gamma[j]
    newgamma = gamma - gj * prow
    newgamma[j] = -(gj / piv)
    before = np.count_nonzero(beta < -tol) + np.count_nonzero(gamma > tol)
    after = np.count_nonzero(newbeta < -tol) + np.count_nonzero(newgamma > tol)
    return int(after - before)


def predict_delta_ii_many(
    alpha: np.ndarray,
    beta: np.ndarray,
    gamma: np.ndarray,
    rows: np.ndarray,
    cols: np.ndarray,
    tol: float,
) -> np.ndarray:
    """Vector of predict_delta_ii over paired (rows[k], cols[k]) candidates."""
    out = np.empty(len(rows), dtype=np.int64)
    for k in range(len(rows)):
        out[k] = predict_delta_ii(alpha, beta, gamma, int(rows[k]), int(cols[k]), tol)
    return out
