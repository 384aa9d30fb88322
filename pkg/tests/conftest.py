"""Shared fixtures: golden tableaus, exact-rational tie-break oracle,
random problem generators, and optional solver-data discovery."""

from __future__ import annotations

import os
from fractions import Fraction

import numpy as np
import pytest

from cstlp import GeneralLP, Row, Tableau

HERE = os.path.dirname(os.path.abspath(__file__))
DATA_DIR = os.path.join(os.path.dirname(HERE), "data")

# ---------------------------------------------------------------------------
# Golden 2x2 instances: initial blocks, expected terminal blocks and classes.
# Terminal values are the frozen byproducts of the documented pivot formulas.

GOLDEN = {
    "g1": {
        "alpha": [[2.0, 1.0], [1.0, 1.0]],
        "beta": [16.0, 10.0],
        "gamma": [6.0, 3.0],
        "terminal_alpha": [[0.5, 0.5], [-0.5, 0.5]],
        "terminal_beta": [8.0, 2.0],
        "terminal_gamma": [-3.0, 0.0],
        "terminal_delta": -48.0,
        "classes": ("F", "F"),
    },
    "g2": {
        "alpha": [[1.0, 1.0], [-1.0, -4.0]],
        "beta": [0.25, -1.0],
        "gamma": [2.0, 4.0],
        "terminal_alpha": [[1.0, 1.0], [3.0, 4.0]],
        "terminal_beta": [0.25, 0.0],
        "terminal_gamma": [-2.0, -4.0],
        "terminal_delta": -1.0,
        "classes": ("F", "Inf"),
    },
    "g3": {
        "alpha": [[-1.0, 1.0], [-1.0, 4.0]],
        "beta": [2.0, 4.0],
        "gamma": [-0.25, 1.0],
        "terminal_alpha": [[-0.75, -0.25], [-0.25, 0.25]],
        "terminal_beta": [1.0, 1.0],
        "terminal_gamma": [0.0, -0.25],
        "terminal_delta": -1.0,
        "classes": ("Inf", "F"),
    },
    "g4": {
        "alpha": [[1.0, -2.0], [-2.0, -1.0]],
        "beta": [-1.0, -1.0],
        "gamma": [6.0, -4.0],
        "terminal_alpha": [[0.2, -0.4], [-0.4, -0.2]],
        "terminal_beta": [0.2, 0.6],
        "terminal_gamma": [-2.8, 1.6],
        "terminal_delta": 1.2,
        "classes": ("Inf", "Phi"),
    },
    "g5": {
        "alpha": [[-1.0, 1.0], [2.0, -1.0]],
        "beta": [-5.0, -4.0],
        "gamma": [1.0, 1.0],
        "terminal_alpha": [[1.0, 1.0], [2.0, 1.0]],
        "terminal_beta": [-9.0, -14.0],
        "terminal_gamma": [-3.0, -2.0],
        "terminal_delta": 23.0,
        "classes": ("Phi", "Inf"),
    },
    "g6": {
        "alpha": [[1.0, -1.0], [-1.0, 1.0]],
        "beta": [1.0, -2.0],
        "gamma": [2.0, -1.0],
        "terminal_alpha": [[1.0, -1.0], [1.0, 0.0]],
        "terminal_beta": [1.0, -1.0],
        "terminal_gamma": [-2.0, 1.0],
        "terminal_delta": -2.0,
        "classes": ("Phi", "Phi"),
    },
}


def golden_tableau(key: str) -> Tableau:
    g = GOLDEN[key]
    return Tableau(g["alpha"], g["beta"], g["gamma"])


def random_tableau(rng: np.random.Generator, m: int, n: int, span: int = 3) -> Tableau:
    alpha = rng.integers(-span, span + 1, (m, n)).astype(float)
    beta = rng.integers(-span, span + 1, m).astype(float)
    gamma = rng.integers(-span, span + 1, n).astype(float)
    return Tableau(alpha, beta, gamma)


# ---------------------------------------------------------------------------
# Exact-rational explicit-epsilon oracle for ratio ties.
#
# Current columns are perturbed by eps^1..eps^n, current rows by
# eps^(n+1)..eps^(n+m).  All arithmetic in Fractions, so arbitrarily deep
# epsilon powers stay exact.

EPS = Fraction(1, 10**6)


def eps_row_winner(t: Tableau, rows, j: int) -> int:
    """Row with the strictly smallest perturbed primal ratio in column j."""
    n = t.n
    best_row, best_ratio = None, None
    for i in map(int, rows):
        a_ij = Fraction(float(t.alpha[i, j]))
        beta_i = Fraction(float(t.beta[i]))
        pert = beta_i + EPS ** (n + i + 1)
        for l in range(n):
            pert += Fraction(float(t.alpha[i, l])) * EPS ** (l + 1)
        ratio = pert / a_ij
        if best_ratio is None or ratio < best_ratio:
            best_row, best_ratio = i, ratio
    return best_row


def eps_col_winner(t: Tableau, cols, i: int) -> int:
    """Column with the strictly smallest perturbed dual ratio in row i."""
    n = t.n
    best_col, best_ratio = None, None
    for j in map(int, cols):
        a_ij = Fraction(float(t.alpha[i, j]))
        gamma_j = Fraction(float(t.gamma[j]))
        pert = gamma_j - EPS ** (j + 1)
        for r in range(t.m):
            pert += Fraction(float(t.alpha[r, j])) * EPS ** (n + r + 1)
        ratio = pert / a_ij
        if best_ratio is None or ratio < best_ratio:
            best_col, best_ratio = j, ratio
    return best_col


# ---------------------------------------------------------------------------
# Random problem generators.


def random_canonical_arrays(rng: np.random.Generator, max_dim: int = 6):
    m = int(rng.integers(1, max_dim + 1))
    n = int(rng.integers(1, max_dim + 1))
    A = rng.integers(-3, 4, (m, n)).astype(float)
    b = rng.integers(-4, 5, m).astype(float)
    c = rng.integers(-4, 5, n).astype(float)
    return A, b, c


def random_general_lp(rng: np.random.Generator, with_bounds: bool = True) -> GeneralLP:
    n = int(rng.integers(1, 5))
    m = int(rng.integers(1, 5))
    names = [f"x{k}" for k in range(n)]
    objective = {v: float(rng.integers(-4, 5)) for v in names if rng.random() < 0.9}
    rows = []
    for r in range(m):
        coeffs = {v: float(rng.integers(-3, 4)) for v in names if rng.random() < 0.8}
        if not coeffs:
            coeffs = {names[0]: 1.0}
        relation = rng.choice(["<=", ">=", "="])
        rows.append(Row(f"r{r}", str(relation), coeffs, float(rng.integers(-4, 5))))
    bounds = {}
    if with_bounds:
        for v in names:
            roll = rng.random()
            if roll < 0.5:
                continue
            if roll < 0.65:
                bounds[v] = (float(rng.integers(-3, 1)), float(rng.integers(2, 5)))
            elif roll < 0.8:
                bounds[v] = (-np.inf, float(rng.integers(0, 5)))
            elif roll < 0.9:
                bounds[v] = (-np.inf, np.inf)
            else:
                fx = float(rng.integers(0, 3))
                bounds[v] = (fx, fx)
    sense = "min" if rng.random() < 0.5 else "max"
    offset = float(rng.integers(-2, 3)) if rng.random() < 0.3 else 0.0
    return GeneralLP(
        name="rand",
        sense=sense,
        var_names=names,
        objective=objective,
        rows=rows,
        bounds=bounds,
        objective_offset=offset,
    )


# ---------------------------------------------------------------------------
# Certificate substitution checks, shared by unit and acceptance tests.


def check_primal_ray(A, c, cert, degenerate, tol=1e-9):
    """A ray must stay feasible and move the objective at the stated rate."""
    A = np.asarray(A, dtype=float)
    c = np.asarray(c, dtype=float)
    d = np.asarray(cert["direction"])
    assert (A @ d <= tol).all()
    assert (d >= -tol).all()
    rate = cert["objective_rate"]
    assert abs(float(c @ d) - rate) <= tol
    if degenerate:
        assert abs(rate) <= tol
    else:
        assert rate > tol


def check_dual_ray(A, b, cert, degenerate, tol=1e-9):
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    dv = np.asarray(cert["direction_v"])
    du = np.asarray(cert["direction_u"])
    assert (dv >= -tol).all()
    assert (du >= -tol).all()
    assert np.abs(dv @ A - du).max() <= tol
    rate = cert["objective_rate"]
    assert abs(float(b @ dv) - rate) <= tol
    if degenerate:
        assert abs(rate) <= tol
    else:
        assert rate < -tol


# ---------------------------------------------------------------------------
# Optional external data (netlib-style MPS files).


def netlib_path(name: str) -> str | None:
    candidates = []
    env = os.environ.get("CSTLP_NETLIB_DIR")
    if env:
        candidates.append(env)
    candidates.append(os.path.join(DATA_DIR, "netlib"))
    for d in candidates:
        for fname in (f"{name}.mps", f"{name.upper()}.mps", f"{name}.MPS"):
            path = os.path.join(d, fname)
            if os.path.exists(path):
                return path
    return None


def require_netlib(name: str) -> str:
    path = netlib_path(name)
    if path is None:
        pytest.skip(
            f"netlib instance {name!r} not available; place {name}.mps under "
            f"data/netlib/ or $CSTLP_NETLIB_DIR (see data/netlib/README.md)"
        )
    return path


# ---------------------------------------------------------------------------
# One pass/fail line per acceptance criterion.


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.passed:
        status = "PASS"
    elif report.failed:
        status = "FAIL"
    else:
        status = "SKIP"
    print(f"\n[acceptance] {name}: {status}")
