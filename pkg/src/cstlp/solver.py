"""Solve loop, terminal classification and reporting.

The loop pivots until no scheme has a candidate (or the infeasibility
index hits zero), then classifies the terminal tableau into one of six
primal/dual class pairs:

    (F, F)      optimal basic point, unique on both sides
    (Inf, F)    optimal, primal optimum not unique (degenerate primal ray)
    (F, Inf)    optimal, dual optimum not unique (degenerate dual ray)
    (Inf, Phi)  primal unbounded, dual infeasible
    (Phi, Inf)  primal infeasible, dual unbounded
    (Phi, Phi)  both infeasible

"F" marks the side whose optimum is a unique basic point, "Inf" a side
whose solution set is unbounded (with finite objective when paired with
F), "Phi" an infeasible side.  Signatures guard against cycling: a
repeated signature means a revisited basic point, so the loop stops and
flags the cycle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TextIO

import numpy as np

from .errors import IterationLimit, NotTerminal
from .model import CanonicalLP, map_back
from .pivoting import (
    DEFAULT_ORDER,
    DUAL_ZERO,
    PRIMAL_ZERO,
    PivotCandidate,
    enumerate_candidates,
    select_pivot,
    tie_break_lex,
    validate_order,
)
from .tableau import DEFAULT_TOL, Tableau, initial_tableau

FEASIBLE = "F"
INFINITE = "Inf"
INFEASIBLE = "Phi"


@dataclass
class SolveOptions:
    """Knobs for the solve loop.

    max_iterations defaults to 50 * (m + n).  scheme_order must keep the
    scheme tiers intact.  trace streams per-iteration lines (and tableau
    snapshots) to the given text stream.
    """

    tol: float = DEFAULT_TOL
    max_iterations: int | None = None
    scheme_order: tuple[str, ...] | None = None
    enumerate_alternatives: bool = False
    trace: TextIO | None = None
    trace_tableaus: bool = False


@dataclass(frozen=True)
class TerminalClass:
    primal: str
    dual: str

    def __str__(self) -> str:
        pretty = {FEASIBLE: "F", INFINITE: "Inf", INFEASIBLE: "Phi"}
        return f"({pretty[self.primal]}, {pretty[self.dual]})"


@dataclass
class Classification:
    """Terminal class plus the witnessing row/column indices.

    ray_col: column certifying a primal ray (gamma > tol, alpha <= tol)
    or, for (Inf, F), a degenerate one (gamma ~ 0).  ray_row: the dual
    counterpart (beta < -tol or ~ 0, alpha >= -tol).
    """

    terminal: TerminalClass
    ray_col: int | None = None
    ray_row: int | None = None


@dataclass
class IterationRecord:
    """State seen at one tableau plus the pivot chosen there.

    The final record has scheme "terminal" and no pivot fields.
    """

    iteration: int
    scheme: str
    i: int | None
    j: int | None
    delta_ii: int | None
    lem: float | None
    infeasibility_index: int
    delta: float
    signature: str


@dataclass
class SolveReport:
    """Everything the solve produced."""

    name: str
    m: int
    n: int
    primal_status: str | None
    dual_status: str | None
    objective: float | None
    objective_canonical: float | None
    iterations: int
    cycle_flag: bool
    x: np.ndarray
    y: np.ndarray
    u: np.ndarray
    v: np.ndarray
    solution: dict[str, float] | None
    dual_solution: dict[str, float] | None
    bound_duals: dict[str, float] | None
    certificates: dict
    records: list[IterationRecord] = field(default_factory=list)
    alternatives: list[dict[str, float]] = field(default_factory=list)
    has_alternative_optima: bool = False
    degenerate_rows: int = 0
    degenerate_cols: int = 0
    terminal_tableau: Tableau | None = None

    @property
    def terminal(self) -> TerminalClass | None:
        if self.primal_status is None or self.dual_status is None:
            return None
        return TerminalClass(self.primal_status, self.dual_status)


def detect_cycle(signature: str, history: set[str]) -> bool:
    """True when the signature was already seen; caller records it after."""
    return signature in history


def _feasible_sides(t: Tableau) -> tuple[bool, bool]:
    pf = bool(np.all(t.beta >= -t.tol))
    df = bool(np.all(t.gamma <= t.tol))
    return pf, df


def _primal_ray_col(t: Tableau, degenerate: bool) -> int | None:
    """Column whose increase is unblocked: all alpha <= tol.

    degenerate=False wants gamma > tol (objective ray), True wants
    gamma ~ 0 (optimal-face ray).
    """
    unblocked = np.all(t.alpha <= t.tol, axis=0)
    if degenerate:
        mask = (np.abs(t.gamma) <= t.tol) & unblocked
    else:
        mask = (t.gamma > t.tol) & unblocked
    hits = np.nonzero(mask)[0]
    return int(hits[0]) if hits.size else None


def _dual_ray_row(t: Tableau, degenerate: bool) -> int | None:
    """Row whose dual increase is unblocked: all alpha >= -tol."""
    unblocked = np.all(t.alpha >= -t.tol, axis=1)
    if degenerate:
        mask = (np.abs(t.beta) <= t.tol) & unblocked
    else:
        mask = (t.beta < -t.tol) & unblocked
    hits = np.nonzero(mask)[0]
    return int(hits[0]) if hits.size else None


def classify_terminal(t: Tableau) -> Classification:
    """Classify a tableau no scheme of the first two tiers can leave.

    Raises NotTerminal when such a pivot still exists.  At a true terminal
    the case split is exhaustive: a primal-infeasible row with no
    candidate has a whole nonnegative alpha row (dual ray), and a
    dual-infeasible column a nonpositive alpha column (primal ray).
    """
    for scheme in DEFAULT_ORDER[:4]:
        if enumerate_candidates(t, scheme):
            raise NotTerminal(f"tableau admits a {scheme} pivot")
    pf, df = _feasible_sides(t)
    if pf and df:
        pcol = _primal_ray_col(t, degenerate=True)
        if pcol is not None:
            return Classification(TerminalClass(INFINITE, FEASIBLE), ray_col=pcol)
        drow = _dual_ray_row(t, degenerate=True)
        if drow is not None:
            return Classification(TerminalClass(FEASIBLE, INFINITE), ray_row=drow)
        return Classification(TerminalClass(FEASIBLE, FEASIBLE))
    if pf:
        pcol = _primal_ray_col(t, degenerate=False)
        return Classification(TerminalClass(INFINITE, INFEASIBLE), ray_col=pcol)
    if df:
        drow = _dual_ray_row(t, degenerate=False)
        return Classification(TerminalClass(INFEASIBLE, INFINITE), ray_row=drow)
    return Classification(
        TerminalClass(INFEASIBLE, INFEASIBLE),
        ray_col=_primal_ray_col(t, degenerate=False),
        ray_row=_dual_ray_row(t, degenerate=False),
    )


def _coarse_classification(t: Tableau) -> Classification:
    """Best-effort classification after a cycle stop."""
    try:
        return classify_terminal(t)
    except NotTerminal:
        pf, df = _feasible_sides(t)
        if pf and df:
            return Classification(TerminalClass(FEASIBLE, FEASIBLE))
        if pf:
            return Classification(TerminalClass(INFINITE, INFEASIBLE))
        if df:
            return Classification(TerminalClass(INFEASIBLE, INFINITE))
        return Classification(TerminalClass(INFEASIBLE, INFEASIBLE))


def _primal_ray_direction(t: Tableau, j: int) -> np.ndarray:
    """Canonical-x direction of the ray entering at column j."""
    n = t.n
    d = np.zeros(n)
    ident = t.col_ids[j]
    if ident < n:
        d[ident] = 1.0
    for i, rid in enumerate(t.row_ids):
        if rid < n:
            d[rid] = -t.alpha[i, j]
    return d


def _dual_ray_direction(t: Tableau, i: int) -> tuple[np.ndarray, np.ndarray]:
    """Canonical (dv, du) direction of the dual ray entering at row i."""
    n, m = t.n, t.m
    dv = np.zeros(m)
    du = np.zeros(n)
    ident = t.row_ids[i]
    if ident < n:
        du[ident] = 1.0
    else:
        dv[ident - n] = 1.0
    for j, cid in enumerate(t.col_ids):
        if cid < n:
            du[cid] = t.alpha[i, j]
        else:
            dv[cid - n] = t.alpha[i, j]
    return dv, du


def _certificates(t: Tableau, cls: Classification) -> dict:
    certs: dict = {}
    if cls.ray_col is not None:
        d = _primal_ray_direction(t, cls.ray_col)
        certs["primal_ray"] = {
            "column": cls.ray_col,
            "label": t.col_labels[cls.ray_col].primal_name,
            "direction": d,
            "objective_rate": float(t.gamma[cls.ray_col]),
        }
    if cls.ray_row is not None:
        dv, du = _dual_ray_direction(t, cls.ray_row)
        certs["dual_ray"] = {
            "row": cls.ray_row,
            "label": t.row_labels[cls.ray_row].dual_name,
            "direction_v": dv,
            "direction_u": du,
            "objective_rate": float(t.beta[cls.ray_row]),
        }
    return certs


def _trace_line(stream: TextIO, rec: IterationRecord) -> None:
    dii = "" if rec.delta_ii is None else f"{rec.delta_ii:+d}"
    lem_s = "" if rec.lem is None else f"{rec.lem:.6g}"
    i_s = "" if rec.i is None else str(rec.i)
    j_s = "" if rec.j is None else str(rec.j)
    stream.write(
        f"iter={rec.iteration} scheme={rec.scheme} i={i_s} j={j_s} "
        f"dii={dii} lem={lem_s} ii={rec.infeasibility_index} "
        f"delta={rec.delta:.17g}\n"
    )


def _explore_alternatives(
    t: Tableau, history: set[str], budget: int, order: tuple[str, ...]
) -> tuple[list[Tableau], int]:
    """Walk zero-indicator pivots from an optimal tableau.

    Collects the distinct optimal bases reachable through degenerate
    rows/columns; stops on signature repeats or budget exhaustion.
    """
    zero_order = tuple(s for s in order if s in (DUAL_ZERO, PRIMAL_ZERO))
    found: list[Tableau] = []
    used = 0
    seen = set(history)
    while used < budget:
        cands: list[PivotCandidate] = []
        for scheme in zero_order:
            cands = enumerate_candidates(t, scheme)
            if cands:
                break
        if not cands:
            break
        best = min(c.delta_ii for c in cands)
        cand = tie_break_lex(t, [c for c in cands if c.delta_ii == best])
        t = t.pivot(cand.i, cand.j)
        used += 1
        sig = t.signature()
        if sig in seen:
            break
        seen.add(sig)
        found.append(t)
    return found, used


def solve(problem: CanonicalLP, options: SolveOptions | None = None) -> SolveReport:
    """Run the pivot loop on a canonical problem and classify the end.

    Raises IterationLimit (carrying the partial report) when the budget
    runs out.  A repeated signature stops the loop with cycle_flag set and
    a best-effort classification.
    """
    o = options or SolveOptions()
    order = validate_order(o.scheme_order) if o.scheme_order is not None else DEFAULT_ORDER
    t = initial_tableau(problem, tol=o.tol)
    m, n = t.m, t.n
    max_iter = o.max_iterations if o.max_iterations is not None else 50 * (m + n)

    history: set[str] = set()
    records: list[IterationRecord] = []
    cycle = False
    iterations = 0

    while True:
        sig = t.signature()
        ii = t.infeasibility_index()
        if detect_cycle(sig, history):
            cycle = True
            break
        history.add(sig)
        if ii == 0:
            break
        cand = select_pivot(t, order)
        if cand is None:
            break
        if iterations >= max_iter:
            partial = _build_report(problem, t, None, records, cycle, iterations, o, history, order)
            raise IterationLimit(
                f"no terminal tableau within {max_iter} iterations", report=partial
            )
        rec = IterationRecord(
            iteration=iterations,
            scheme=cand.scheme,
            i=cand.i,
            j=cand.j,
            delta_ii=cand.delta_ii,
            lem=cand.lem,
            infeasibility_index=ii,
            delta=t.delta,
            signature=sig,
        )
        records.append(rec)
        if o.trace is not None:
            _trace_line(o.trace, rec)
            if o.trace_tableaus:
                o.trace.write(t.format_grid() + "\n")
        t = t.pivot(cand.i, cand.j)
        iterations += 1

    cls = _coarse_classification(t) if cycle else classify_terminal(t)
    records.append(
        IterationRecord(
            iteration=iterations,
            scheme="terminal",
            i=None,
            j=None,
            delta_ii=None,
            lem=None,
            infeasibility_index=t.infeasibility_index(),
            delta=t.delta,
            signature=t.signature(),
        )
    )
    if o.trace is not None:
        _trace_line(o.trace, records[-1])
        if o.trace_tableaus:
            o.trace.write(t.format_grid() + "\n")
    return _build_report(problem, t, cls, records, cycle, iterations, o, history, order)


def _build_report(
    problem: CanonicalLP,
    t: Tableau,
    cls: Classification | None,
    records: list[IterationRecord],
    cycle: bool,
    iterations: int,
    o: SolveOptions,
    history: set[str],
    order: tuple[str, ...],
) -> SolveReport:
    sol = t.basic_solution()
    primal = cls.terminal.primal if cls else None
    dual = cls.terminal.dual if cls else None

    objective_canonical = None
    if primal is not None and INFEASIBLE not in (primal, dual):
        objective_canonical = float(sol.f)

    solution = dual_solution = bound_duals = None
    objective = None
    if problem.transform is not None:
        mapped = map_back(problem.transform, sol.x, sol.v, objective_canonical)
        objective = mapped.objective
        if primal is not None and primal != INFEASIBLE:
            solution = mapped.variables
        if dual is not None and dual != INFEASIBLE:
            dual_solution = mapped.row_duals
            bound_duals = mapped.bound_duals
    else:
        objective = objective_canonical
        names = problem.var_names()
        if primal is not None and primal != INFEASIBLE:
            solution = {names[k]: float(sol.x[k]) for k in range(t.n)}
        if dual is not None and dual != INFEASIBLE:
            rnames = problem.row_names()
            dual_solution = {rnames[k]: float(sol.v[k]) for k in range(t.m)}
            bound_duals = {}

    certificates = _certificates(t, cls) if cls else {}

    has_alt = False
    alternatives: list[dict[str, float]] = []
    if primal is not None and primal != INFEASIBLE and dual != INFEASIBLE:
        has_alt = bool(
            enumerate_candidates(t, DUAL_ZERO) or enumerate_candidates(t, PRIMAL_ZERO)
        )
        if has_alt and o.enumerate_alternatives:
            max_iter = o.max_iterations if o.max_iterations is not None else 50 * (t.m + t.n)
            tabs, _ = _explore_alternatives(t, history, max_iter, order)
            seen_pts: list[np.ndarray] = [sol.x]
            for alt in tabs:
                ax = alt.basic_solution().x
                if any(np.allclose(ax, p, atol=1e-9) for p in seen_pts):
                    continue
                seen_pts.append(ax)
                if problem.transform is not None:
                    alternatives.append(map_back(problem.transform, ax).variables)
                else:
                    names = problem.var_names()
                    alternatives.append({names[k]: float(ax[k]) for k in range(t.n)})

    return SolveReport(
        name=problem.name,
        m=t.m,
        n=t.n,
        primal_status=primal,
        dual_status=dual,
        objective=objective,
        objective_canonical=objective_canonical,
        iterations=iterations,
        cycle_flag=cycle,
        x=sol.x,
        y=sol.y,
        u=sol.u,
        v=sol.v,
        solution=solution,
        dual_solution=dual_solution,
        bound_duals=bound_duals,
        certificates=certificates,
        records=records,
        alternatives=alternatives,
        has_alternative_optima=has_alt,
        degenerate_rows=int(np.count_nonzero(np.abs(t.beta) <= t.tol)),
        degenerate_cols=int(np.count_nonzero(np.abs(t.gamma) <= t.tol)),
        terminal_tableau=t,
    )


def solve_arrays(A, b, c, name: str = "", options: SolveOptions | None = None) -> SolveReport:
    """Convenience: solve max c.x s.t. A.x <= b, x >= 0 given raw arrays."""
    return solve(CanonicalLP(A=A, b=b, c=c, name=name), options)
