# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled tableau kernels.

Semantics and floating-point rounding must match ``_core_py.py`` exactly;
the build disables FP contraction so the scalar loops below round like the
numpy vector expressions (multiply, then subtract, one rounding each).
"""

import numpy as np

COMPILED = True


def pivot_update(double[:, ::1] alpha, double[::1] beta, double[::1] gamma,
                 Py_ssize_t i, Py_ssize_t j, double delta):
    """Apply the pivot exchange at (i, j) in place and return the new delta."""
    cdef Py_ssize_t m = alpha.shape[0]
    cdef Py_ssize_t n = alpha.shape[1]
    cdef double piv = alpha[i, j]
    cdef double rb = beta[i] / piv
    cdef double gj = gamma[j]
    cdef Py_ssize_t r, c
    cdef double cr

    # Scale the pivot row first; other rows subtract colj[r] * scaled entry.
    for c in range(n):
        if c != j:
            alpha[i, c] = alpha[i, c] / piv
    for r in range(m):
        if r == i:
            continue
        cr = alpha[r, j]
        for c in range(n):
            if c != j:
                alpha[r, c] = alpha[r, c] - cr * alpha[i, c]
        beta[r] = beta[r] - cr * rb
        alpha[r, j] = -(cr / piv)
    for c in range(n):
        if c != j:
            gamma[c] = gamma[c] - gj * alpha[i, c]
    beta[i] = rb
    gamma[j] = -(gj / piv)
    alpha[i, j] = 1.0 / piv
    return delta - gj * rb


def count_infeasible(const double[::1] beta, const double[::1] gamma, double tol):
    """Number of primal-infeasible rows plus dual-infeasible columns."""
    cdef Py_ssize_t k
    cdef long total = 0
    for k in range(beta.shape[0]):
        if beta[k] < -tol:
            total += 1
    for k in range(gamma.shape[0]):
        if gamma[k] > tol:
            total += 1
    return total


cdef long _predict(const double[:, ::1] alpha, const double[::1] beta,
                   const double[::1] gamma, Py_ssize_t i, Py_ssize_t j,
                   double tol) noexcept nogil:
    cdef Py_ssize_t m = alpha.shape[0]
    cdef Py_ssize_t n = alpha.shape[1]
    cdef double piv = alpha[i, j]
    cdef double rb = beta[i] / piv
    cdef double gj = gamma[j]
    cdef long diff = 0
    cdef Py_ssize_t r, c
    cdef double nb, ng

    for r in range(m):
        if r == i:
            nb = rb
        else:
            nb = beta[r] - alpha[r, j] * rb
        if nb < -tol:
            diff += 1
        if beta[r] < -tol:
            diff -= 1
    for c in range(n):
        if c == j:
            ng = -(gj / piv)
        else:
            ng = gamma[c] - gj * (alpha[i, c] / piv)
        if ng > tol:
            diff += 1
        if gamma[c] > tol:
            diff -= 1
    return diff


def predict_delta_ii(const double[:, ::1] alpha, const double[::1] beta,
                     const double[::1] gamma, Py_ssize_t i, Py_ssize_t j, double tol):
    """Change in the infeasibility index a pivot at (i, j) would cause.

    O(m + n): recomputes only the post-pivot beta and gamma, with the exact
    expression sequence of :func:`pivot_update`, and counts sign flips
    across the tolerance thresholds.
    """
    return _predict(alpha, beta, gamma, i, j, tol)


def predict_delta_ii_many(const double[:, ::1] alpha, const double[::1] beta,
                          const double[::1] gamma, const long[::1] rows,
                          const long[::1] cols, double tol):
    """Vector of predict_delta_ii over paired (rows[k], cols[k]) candidates."""
    cdef Py_ssize_t k
    out = np.empty(rows.shape[0], dtype=np.int64)
    cdef long[::1] vout = out
    for k in range(rows.shape[0]):
        vout[k] = _predict(alpha, beta, gamma, rows[k], cols[k], tol)
    return out
