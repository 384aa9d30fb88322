"""Compact symmetric tableau.

The tableau stores a maximization problem

    max f = c.x   s.t.   A.x <= b,  x >= 0

as the dense block

    [ alpha | beta ]        alpha: (m, n)   beta: (m,)
    [ gamma | delta]        gamma: (n,)     delta: scalar

where row i carries the basic primal variable currently attached to it and
column j the nonbasic one.  Every label keeps its permanent primal-dual
partner: decision variable x_k pairs with dual surplus u_k, slack y_i with
dual price v_i.  A pivot exchanges the labels of its row and column and
transforms the block; all numeric work happens in :mod:`cstlp.kernels`.

Instances are immutable: arrays are marked read-only and every operation
returns a new tableau.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ShapeError, ZeroPivot

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class Label:
    """Identity of a tableau row or column.

    ``kind`` is "col" for an original decision variable (x/u pair) and
    "row" for an original constraint (y/v pair); ``index`` is 0-based
    within the kind.
    """

    kind: str
    index: int

    @property
    def primal_name(self) -> str:
        return ("x" if self.kind == "col" else "y") + str(self.index + 1)

    @property
    def dual_name(self) -> str:
        return ("u" if self.kind == "col" else "v") + str(self.index + 1)


@dataclass(frozen=True)
class BasicSolution:
    """Primal and dual values read off a tableau at its basic point.

    Indexed in the original spaces: x/u have length n, y/v length m.
    Both objectives coincide at a basic point: f = g = -delta.
    """

    x: np.ndarray
    y: np.ndarray
    u: np.ndarray
    v: np.ndarray
    f: float
    g: float


def _sign_char(value: float, tol: float, chars: str) -> str:
    """Map value to chars[0]/chars[1]/chars[2] for negative/zero/positive."""
    if value < -tol:
        return chars[0]
    if value > tol:
        return chars[2]
    return chars[1]


class Tableau:
    """Immutable dense tableau with row/column labels."""

    __slots__ = ("alpha", "beta", "gamma", "delta", "row_ids", "col_ids", "tol")

    def __init__(
        self,
        alpha,
        beta,
        gamma,
        delta: float = 0.0,
        row_ids: tuple[int, ...] | None = None,
        col_ids: tuple[int, ...] | None = None,
        tol: float = DEFAULT_TOL,
    ):
        alpha = np.ascontiguousarray(alpha, dtype=np.float64)
        beta = np.ascontiguousarray(beta, dtype=np.float64)
        gamma = np.ascontiguousarray(gamma, dtype=np.float64)
        if alpha.ndim != 2:
            raise ShapeError("alpha must be 2-dimensional")
        m, n = alpha.shape
        if beta.shape != (m,):
            raise ShapeError(f"beta must have shape ({m},), got {beta.shape}")
        if gamma.shape != (n,):
            raise ShapeError(f"gamma must have shape ({n},), got {gamma.shape}")
        # Fresh tableaus label columns 0..n-1 with the decision variables
        # and rows with ids n..n+m-1 (the slacks).
        if row_ids is None:
            row_ids = tuple(range(n, n + m))
        if col_ids is None:
            col_ids = tuple(range(n))
        if len(row_ids) != m or len(col_ids) != n:
            raise ShapeError("label lists do not match the tableau shape")
        for arr in (alpha, beta, gamma):
            arr.flags.writeable = False
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "delta", float(delta))
        object.__setattr__(self, "row_ids", tuple(row_ids))
        object.__setattr__(self, "col_ids", tuple(col_ids))
        object.__setattr__(self, "tol", float(tol))

    def __setattr__(self, name, value):
        raise AttributeError("Tableau is immutable")

    @property
    def m(self) -> int:
        return self.alpha.shape[0]

    @property
    def n(self) -> int:
        return self.alpha.shape[1]

    def _label(self, ident: int) -> Label:
        n = self.n
        return Label("col", ident) if ident < n else Label("row", ident - n)

    @property
    def row_labels(self) -> tuple[Label, ...]:
        return tuple(self._label(k) for k in self.row_ids)

    @property
    def col_labels(self) -> tuple[Label, ...]:
        return tuple(self._label(k) for k in self.col_ids)

    def pivot(self, i: int, j: int) -> "Tableau":
        """Pivot exchange at row i, column j; returns the new tableau."""
        m, n = self.alpha.shape
        if not (0 <= i < m and 0 <= j < n):
            raise ShapeError(f"pivot ({i}, {j}) outside {m}x{n} tableau")
        if abs(self.alpha[i, j]) <= self.tol:
            raise ZeroPivot(f"alpha[{i}, {j}] = {self.alpha[i, j]!r} is zero within tol")
        alpha = self.alpha.copy()
        beta = self.beta.copy()
        gamma = self.gamma.copy()
        delta = kernels.pivot_update(alpha, beta, gamma, i, j, self.delta)
        row_ids = list(self.row_ids)
        col_ids = list(self.col_ids)
        row_ids[i], col_ids[j] = col_ids[j], row_ids[i]
        return Tableau(alpha, beta, gamma, delta, tuple(row_ids), tuple(col_ids), self.tol)

    def infeasibility_index(self) -> int:
        """Count of rows with beta < -tol plus columns with gamma > tol.

        Zero exactly when the basic point is primal and dual feasible.
        """
        return kernels.count_infeasible(self.beta, self.gamma, self.tol)

    def cell_type(self, i: int, j: int) -> str:
        """Three-character sign class of cell (i, j).

        First char: sign of alpha[i, j] (+/-); second: beta_i as N/Z/P;
        third: gamma_j as n/z/p.  Cells with alpha zero within tol are
        never admissible for any scheme and share the single code "0**".
        """
        if abs(self.alpha[i, j]) <= self.tol:
            return "0**"
        return (
            ("+" if self.alpha[i, j] > 0 else "-")
            + _sign_char(self.beta[i], self.tol, "NZP")
            + _sign_char(self.gamma[j], self.tol, "nzp")
        )

    def signature(self) -> str:
        """Sign pattern of the basic point, one slot per original label.

        Slots 0..n-1 belong to the decision variables, slots n..n+m-1 to
        the slacks.  A label sitting on a column contributes the lowercase
        sign of its gamma entry (n/z/p); on a row, the uppercase sign of
        its beta entry (N/Z/P).  The case pattern pins down the basis and
        the signs pin down the tableau, so a repeated signature means a
        revisited basic point.
        """
        chars = [""] * (self.n + self.m)
        for j, ident in enumerate(self.col_ids):
            chars[ident] = _sign_char(self.gamma[j], self.tol, "nzp")
        for i, ident in enumerate(self.row_ids):
            chars[ident] = _sign_char(self.beta[i], self.tol, "NZP")
        return "".join(chars)

    def basic_solution(self) -> BasicSolution:
        """Read the current basic point, routed back to original indices.

        Basic labels take their row's beta value on the primal side and 0
        on the dual side; nonbasic labels take 0 on the primal side and
        -gamma on the dual side.
        """
        n, m = self.n, self.m
        x = np.zeros(n)
        y = np.zeros(m)
        u = np.zeros(n)
        v = np.zeros(m)
        for i, ident in enumerate(self.row_ids):
            if ident < n:
                x[ident] = self.beta[i]
            else:
                y[ident - n] = self.beta[i]
        for j, ident in enumerate(self.col_ids):
            if ident < n:
                u[ident] = -self.gamma[j]
            else:
                v[ident - n] = -self.gamma[j]
        f = -self.delta
        return BasicSolution(x=x, y=y, u=u, v=v, f=f, g=f)

    def format_grid(self) -> str:
        """Plain-text grid (alpha | beta / gamma | delta), 17 significant digits."""
        width = 24
        cols = "".join(lbl.primal_name.rjust(width) for lbl in self.col_labels)
        lines = [" " * 6 + cols + " |"]
        for i in range(self.m):
            cells = "".join(f"{v:.17g}".rjust(width) for v in self.alpha[i])
            lines.append(
                self.row_labels[i].primal_name.ljust(6) + cells + " | " + f"{self.beta[i]:.17g}"
            )
        cells = "".join(f"{v:.17g}".rjust(width) for v in self.gamma)
        lines.append(" " * 6 + cells + " | " + f"{self.delta:.17g}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return (
            f"Tableau(m={self.m}, n={self.n}, delta={self.delta!r}, "
            f"ii={self.infeasibility_index()})"
        )


def initial_tableau(problem, tol: float = DEFAULT_TOL) -> Tableau:
    """Tableau for a canonical problem: alpha=A, beta=b, gamma=c, delta=0."""
    return Tableau(problem.A, problem.b, problem.c, 0.0, tol=tol)
