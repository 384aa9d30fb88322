"""General LP container and reduction to canonical form.

Canonical form is the shape the tableau works on:

    max c.x   s.t.   A.x <= b,   x >= 0.

``canonicalize`` reduces a :class:`GeneralLP` (min or max, <=/=/>= rows,
ranged rows, arbitrary bounds, free variables) to that shape without
artificial variables and records every transformation, so
:func:`map_back` can translate a canonical solution (primal and dual)
back to the original problem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InfeasibleBounds, ShapeError

INF = math.inf

_RELATIONS = ("<=", ">=", "=")


@dataclass
class Row:
    """One constraint: coeffs . x  <relation>  rhs, optionally ranged.

    A ranged row restricts coeffs . x to an interval derived from rhs,
    range and the relation the way MPS RANGES sections do:

        <=  ->  [rhs - |range|, rhs]
        >=  ->  [rhs, rhs + |range|]
        =   ->  [rhs, rhs + range] for range >= 0 else [rhs + range, rhs]
    """

    name: str
    relation: str
    coeffs: dict[str, float]
    rhs: float
    range: float | None = None

    def interval(self) -> tuple[float, float]:
        """The (lo, hi) interval the row constrains its expression to."""
        if self.range is None:
            if self.relation == "<=":
                return (-INF, self.rhs)
            if self.relation == ">=":
                return (self.rhs, INF)
            return (self.rhs, self.rhs)
        r = self.range
        if self.relation == "<=":
            return (self.rhs - abs(r), self.rhs)
        if self.relation == ">=":
            return (self.rhs, self.rhs + abs(r))
        return (self.rhs, self.rhs + r) if r >= 0 else (self.rhs + r, self.rhs)


@dataclass
class GeneralLP:
    """LP in the user's terms: sense, relational rows, variable bounds.

    Missing bounds default to [0, +inf).  ``objective_offset`` is a
    constant added to the objective value (MPS files state it as an RHS
    entry on the objective row).
    """

    name: str
    sense: str
    var_names: list[str]
    objective: dict[str, float]
    rows: list[Row]
    bounds: dict[str, tuple[float, float]] = field(default_factory=dict)
    objective_offset: float = 0.0

    def __post_init__(self):
        if self.sense not in ("min", "max"):
            raise ValueError(f"sense must be 'min' or 'max', got {self.sense!r}")
        declared = set(self.var_names)
        if len(declared) != len(self.var_names):
            raise ValueError("duplicate variable names")
        for v in self.objective:
            if v not in declared:
                raise ValueError(f"objective references undeclared variable {v!r}")
        seen_rows = set()
        for row in self.rows:
            if row.name in seen_rows:
                raise ValueError(f"duplicate row name {row.name!r}")
            seen_rows.add(row.name)
            if row.relation not in _RELATIONS:
                raise ValueError(f"row {row.name!r}: bad relation {row.relation!r}")
            for v in row.coeffs:
                if v not in declared:
                    raise ValueError(f"row {row.name!r} references undeclared variable {v!r}")
        for v in self.bounds:
            if v not in declared:
                raise ValueError(f"bounds reference undeclared variable {v!r}")

    def bound(self, var: str) -> tuple[float, float]:
        return self.bounds.get(var, (0.0, INF))


@dataclass
class VarMap:
    """How one original variable appears in canonical space.

    kind "direct": x = x'[col]; "shifted": x = x'[col] + shift;
    "free": x = x'[col] - t (t is the shared shift column).
    """

    name: str
    kind: str
    col: int
    shift: float = 0.0


@dataclass
class RowMap:
    """Provenance of one canonical row, for dual translation.

    kinds: "ineq" (sign-oriented copy of an original row), "eq_le"
    (<=-half of an equality), "eq_agg" (the single aggregated >=-side of
    all equalities, negated), "range_up"/"range_lo" (halves of a ranged
    row), "ubound" (upper-bound row of a variable), "fix" (pin of a fixed
    variable, routed through the equality machinery).
    """

    kind: str
    orig: str
    sign: int = 1
    members: list[tuple[str, str]] = field(default_factory=list)


@dataclass
class TransformRecord:
    """Everything needed to translate canonical solutions back."""

    sense_flipped: bool
    shift_constant: float
    objective_offset: float
    var_maps: list[VarMap]
    t_col: int | None
    row_maps: list[RowMap]
    canonical_var_names: list[str]
    canonical_row_names: list[str]


@dataclass
class CanonicalLP:
    """max c.x s.t. A.x <= b, x >= 0, plus the record of how it was made."""

    A: np.ndarray
    b: np.ndarray
    c: np.ndarray
    name: str = ""
    transform: TransformRecord | None = None

    def __post_init__(self):
        self.A = np.asarray(self.A, dtype=float)
        self.b = np.asarray(self.b, dtype=float)
        self.c = np.asarray(self.c, dtype=float)
        if self.A.ndim != 2:
            raise ShapeError("A must be 2-dimensional")
        m, n = self.A.shape
        if self.b.shape != (m,):
            raise ShapeError(f"b must have shape ({m},), got {self.b.shape}")
        if self.c.shape != (n,):
            raise ShapeError(f"c must have shape ({n},), got {self.c.shape}")

    @property
    def m(self) -> int:
        return self.A.shape[0]

    @property
    def n(self) -> int:
        return self.A.shape[1]

    def var_names(self) -> list[str]:
        if self.transform is not None:
            return self.transform.canonical_var_names
        return [f"x{k + 1}" for k in range(self.n)]

    def row_names(self) -> list[str]:
        if self.transform is not None:
            return self.transform.canonical_row_names
        return [f"row{k + 1}" for k in range(self.m)]


@dataclass
class MappedSolution:
    """Canonical solution expressed in the original problem's terms."""

    objective: float | None
    variables: dict[str, float]
    row_duals: dict[str, float]
    bound_duals: dict[str, float]


def canonicalize(lp: GeneralLP) -> CanonicalLP:
    """Reduce a GeneralLP to max/<=/nonnegative canonical form.

    Steps: flip a min objective; shift variables with finite lower bounds
    to 0; split free variables (including lower-unbounded ones) against a
    single shared column t; turn every >= into a negated <=; expand ranged
    rows into their two sides; keep each equality as its <= side and add
    one aggregated row for the >= sides of all equalities together; add a
    <= row per finite upper bound; fixed variables (l = u) are shifted and
    pinned through the equality machinery.
    """
    for v in lp.var_names:
        lo, hi = lp.bound(v)
        if lo > hi:
            raise InfeasibleBounds(f"variable {v!r} has lower bound {lo} > upper bound {hi}")

    flip = lp.sense == "min"
    sign0 = -1.0 if flip else 1.0
    ctilde = {v: sign0 * lp.objective.get(v, 0.0) for v in lp.var_names}

    var_maps: list[VarMap] = []
    canonical_var_names: list[str] = []
    free_vars: list[str] = []
    for k, v in enumerate(lp.var_names):
        lo, _ = lp.bound(v)
        if lo == -INF:
            var_maps.append(VarMap(v, "free", k))
            free_vars.append(v)
        elif lo == 0.0:
            var_maps.append(VarMap(v, "direct", k))
        else:
            var_maps.append(VarMap(v, "shifted", k, shift=lo))
        canonical_var_names.append(v)
    t_col = None
    if free_vars:
        t_col = len(lp.var_names)
        canonical_var_names.append("__t")
    n_canon = len(canonical_var_names)
    by_col = {vm.name: vm for vm in var_maps}

    shift_constant = sum(ctilde[vm.name] * vm.shift for vm in var_maps if vm.kind == "shifted")

    def canon_coeffs(coeffs: dict[str, float]) -> tuple[np.ndarray, float]:
        """Row coefficients over canonical columns and the rhs correction."""
        a = np.zeros(n_canon)
        corr = 0.0
        for v, coef in coeffs.items():
            vm = by_col[v]
            a[vm.col] += coef
            if vm.kind == "shifted":
                corr += coef * vm.shift
            elif vm.kind == "free":
                a[t_col] -= coef
        return a, corr

    ineq_rows: list[tuple[np.ndarray, float, RowMap]] = []
    eq_rows: list[tuple[np.ndarray, float, RowMap]] = []

    for row in lp.rows:
        a, corr = canon_coeffs(row.coeffs)
        lo, hi = row.interval()
        if row.range is not None:
            ineq_rows.append((a, hi - corr, RowMap("range_up", row.name)))
            ineq_rows.append((-a, corr - lo, RowMap("range_lo", row.name)))
        elif row.relation == "<=":
            ineq_rows.append((a, hi - corr, RowMap("ineq", row.name, sign=1)))
        elif row.relation == ">=":
            ineq_rows.append((-a, corr - lo, RowMap("ineq", row.name, sign=-1)))
        else:
            eq_rows.append((a, row.rhs - corr, RowMap("eq_le", row.name)))

    for vm in var_maps:
        lo, hi = lp.bound(vm.name)
        if hi == INF:
            continue
        if vm.kind != "free" and hi == lo:
            a = np.zeros(n_canon)
            a[vm.col] = 1.0
            eq_rows.append((a, 0.0, RowMap("fix", vm.name)))
            continue
        a = np.zeros(n_canon)
        a[vm.col] = 1.0
        if vm.kind == "free":
            a[t_col] = -1.0
            rhs = hi
        else:
            rhs = hi - vm.shift
        ineq_rows.append((a, rhs, RowMap("ubound", vm.name)))

    A_rows: list[np.ndarray] = []
    b_vals: list[float] = []
    row_maps: list[RowMap] = []
    canonical_row_names: list[str] = []

    def push(a: np.ndarray, rhs: float, rm: RowMap, name: str) -> None:
        A_rows.append(a)
        b_vals.append(rhs)
        row_maps.append(rm)
        canonical_row_names.append(name)

    for a, rhs, rm in ineq_rows:
        suffix = {"range_up": "__up", "range_lo": "__lo", "ubound": "__ub"}.get(rm.kind, "")
        push(a, rhs, rm, rm.orig + suffix)
    for a, rhs, rm in eq_rows:
        push(a, rhs, rm, rm.orig + ("__fix" if rm.kind == "fix" else "__le"))
    if eq_rows:
        agg = -sum(a for a, _, _ in eq_rows)
        agg_rhs = -sum(rhs for _, rhs, _ in eq_rows)
        members = [(rm.kind, rm.orig) for _, _, rm in eq_rows]
        push(agg, agg_rhs, RowMap("eq_agg", "", members=members), "__eq_agg")

    c = np.zeros(n_canon)
    for vm in var_maps:
        c[vm.col] += ctilde[vm.name]
    if t_col is not None:
        c[t_col] = -sum(ctilde[v] for v in free_vars)

    A = np.array(A_rows) if A_rows else np.zeros((0, n_canon))
    transform = TransformRecord(
        sense_flipped=flip,
        shift_constant=shift_constant,
        objective_offset=lp.objective_offset,
        var_maps=var_maps,
        t_col=t_col,
        row_maps=row_maps,
        canonical_var_names=canonical_var_names,
        canonical_row_names=canonical_row_names,
    )
    return CanonicalLP(A=A, b=np.array(b_vals), c=c, name=lp.name, transform=transform)


def map_back(
    transform: TransformRecord,
    x: np.ndarray,
    v: np.ndarray | None = None,
    f: float | None = None,
) -> MappedSolution:
    """Translate a canonical solution back to the original problem.

    x is the canonical primal vector, v the canonical dual prices (one per
    canonical row), f the canonical objective value.  Variable values undo
    shifts and the free-variable split; equality duals recombine the
    <=-half and the aggregated row; ranged duals recombine both halves;
    upper-bound duals are reported per variable.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (len(transform.canonical_var_names),):
        raise ShapeError(
            f"x must have shape ({len(transform.canonical_var_names)},), got {x.shape}"
        )
    if v is not None:
        v = np.asarray(v, dtype=float)
        if v.shape != (len(transform.canonical_row_names),):
            raise ShapeError(
                f"v must have shape ({len(transform.canonical_row_names)},), got {v.shape}"
            )

    t_val = float(x[transform.t_col]) if transform.t_col is not None else 0.0
    variables: dict[str, float] = {}
    for vm in transform.var_maps:
        if vm.kind == "free":
            variables[vm.name] = float(x[vm.col]) - t_val
        else:
            variables[vm.name] = float(x[vm.col]) + vm.shift

    sign0 = -1.0 if transform.sense_flipped else 1.0
    objective = None
    if f is not None:
        objective = sign0 * (f + transform.shift_constant) + transform.objective_offset

    row_duals: dict[str, float] = {}
    bound_duals: dict[str, float] = {}
    if v is not None:
        v = [float(val) for val in v]
        for r, rm in enumerate(transform.row_maps):
            if rm.kind == "ineq":
                row_duals[rm.orig] = row_duals.get(rm.orig, 0.0) + rm.sign * v[r]
            elif rm.kind == "eq_le":
                row_duals[rm.orig] = row_duals.get(rm.orig, 0.0) + v[r]
            elif rm.kind == "range_up":
                row_duals[rm.orig] = row_duals.get(rm.orig, 0.0) + v[r]
            elif rm.kind == "range_lo":
                row_duals[rm.orig] = row_duals.get(rm.orig, 0.0) - v[r]
            elif rm.kind == "ubound":
                bound_duals[rm.orig] = bound_duals.get(rm.orig, 0.0) + v[r]
            elif rm.kind == "fix":
                bound_duals[rm.orig] = bound_duals.get(rm.orig, 0.0) + v[r]
            elif rm.kind == "eq_agg":
                for kind, name in rm.members:
                    if kind == "fix":
                        bound_duals[name] = bound_duals.get(name, 0.0) - v[r]
                    else:
                        row_duals[name] = row_duals.get(name, 0.0) - v[r]
    return MappedSolution(
        objective=objective,
        variables=variables,
        row_duals=row_duals,
        bound_duals=bound_duals,
    )
