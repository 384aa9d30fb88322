"""MPS reading/writing and solve-report serialization.

The parser accepts free-format MPS: section headers start in column 1,
data lines are indented and whitespace-split, ``*`` starts a comment.
Sections NAME, OBJSENSE, ROWS, COLUMNS, RHS, RANGES, BOUNDS, ENDATA are
understood.  The first N row is the objective (an RHS entry on it is the
negated objective constant); further N rows are free rows whose entries
are ignored.  Duplicate coefficient entries for one (column, row) pair
accumulate.
"""

from __future__ import annotations

import json
import os
from typing import Iterable

import numpy as np

from .errors import (
    DuplicateRow,
    MalformedNumber,
    MpsError,
    UndeclaredReference,
    UnknownSection,
)
from .model import INF, GeneralLP, Row

_SECTIONS = {"NAME", "OBJSENSE", "ROWS", "COLUMNS", "RHS", "RANGES", "BOUNDS", "ENDATA"}
_ROW_KINDS = {"N", "L", "G", "E"}
_RELATION = {"L": "<=", "G": ">=", "E": "="}
_BOUND_KINDS_VALUED = {"UP", "LO", "FX"}
_BOUND_KINDS_FLAG = {"FR", "MI", "PL"}


def _number(token: str, lineno: int) -> float:
    try:
        return float(token)
    except ValueError:
        # Old Fortran-style exponents: 1.5D+02.
        try:
            return float(token.replace("D", "E").replace("d", "e"))
        except ValueError:
            raise MalformedNumber(f"cannot parse number {token!r}", lineno) from None


def parse_mps(text: str, default_name: str = "") -> GeneralLP:
    """Parse MPS text into a GeneralLP (sense defaults to minimize)."""
    name = default_name
    sense = "min"
    section = None
    obj_row: str | None = None
    free_rows: set[str] = set()
    row_kind: dict[str, str] = {}
    row_order: list[str] = []
    var_order: list[str] = []
    var_seen: set[str] = set()
    objective: dict[str, float] = {}
    coeffs: dict[str, dict[str, float]] = {}
    rhs: dict[str, float] = {}
    obj_offset = 0.0
    ranges: dict[str, float] = {}
    bounds_lo: dict[str, float] = {}
    bounds_hi: dict[str, float] = {}
    ended = False

    def touch_var(col: str) -> None:
        if col not in var_seen:
            var_seen.add(col)
            var_order.append(col)

    def add_coeff(col: str, row: str, val: float, lineno: int) -> None:
        touch_var(col)
        if row == obj_row:
            objective[col] = objective.get(col, 0.0) + val
        elif row in free_rows:
            pass
        elif row in row_kind:
            coeffs[row][col] = coeffs[row].get(col, 0.0) + val
        else:
            raise UndeclaredReference(f"unknown row {row!r}", lineno)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("*"):
            continue
        if ended:
            break
        if not raw[0].isspace():
            fields = stripped.split()
            keyword = fields[0].upper()
            if keyword not in _SECTIONS:
                raise UnknownSection(f"unknown section {fields[0]!r}", lineno)
            section = keyword
            if keyword == "NAME" and len(fields) > 1:
                name = fields[1]
            elif keyword == "OBJSENSE" and len(fields) > 1:
                sense = "max" if fields[1].upper().startswith("MAX") else "min"
            elif keyword == "ENDATA":
                ended = True
            continue

        fields = stripped.split()
        if section == "OBJSENSE":
            sense = "max" if fields[0].upper().startswith("MAX") else "min"
        elif section == "ROWS":
            if len(fields) != 2 or fields[0].upper() not in _ROW_KINDS:
                raise MpsError(f"bad ROWS line {stripped!r}", lineno)
            kind, rname = fields[0].upper(), fields[1]
            if rname == obj_row or rname in free_rows or rname in row_kind:
                raise DuplicateRow(f"row {rname!r} declared twice", lineno)
            if kind == "N":
                if obj_row is None:
                    obj_row = rname
                else:
                    free_rows.add(rname)
            else:
                row_kind[rname] = kind
                row_order.append(rname)
                coeffs[rname] = {}
        elif section == "COLUMNS":
            if len(fields) >= 2 and fields[1].upper().startswith("'MARKER'"):
                raise MpsError("integer markers are not supported", lineno)
            if len(fields) not in (3, 5):
                raise MpsError(f"bad COLUMNS line {stripped!r}", lineno)
            col = fields[0]
            for k in range(1, len(fields), 2):
                add_coeff(col, fields[k], _number(fields[k + 1], lineno), lineno)
        elif section == "RHS":
            if len(fields) not in (3, 5):
                raise MpsError(f"bad RHS line {stripped!r}", lineno)
            for k in range(1, len(fields), 2):
                row, val = fields[k], _number(fields[k + 1], lineno)
                if row == obj_row:
                    obj_offset = -val
                elif row in free_rows:
                    pass
                elif row in row_kind:
                    rhs[row] = rhs.get(row, 0.0) + val
                else:
                    raise UndeclaredReference(f"unknown row {row!r}", lineno)
        elif section == "RANGES":
            if len(fields) not in (3, 5):
                raise MpsError(f"bad RANGES line {stripped!r}", lineno)
            for k in range(1, len(fields), 2):
                row, val = fields[k], _number(fields[k + 1], lineno)
                if row not in row_kind:
                    raise UndeclaredReference(f"unknown or non-constraint row {row!r}", lineno)
                ranges[row] = val
        elif section == "BOUNDS":
            kind = fields[0].upper()
            if kind in _BOUND_KINDS_VALUED:
                if len(fields) != 4:
                    raise MpsError(f"bad BOUNDS line {stripped!r}", lineno)
                col, val = fields[2], _number(fields[3], lineno)
            elif kind in _BOUND_KINDS_FLAG:
                if len(fields) not in (3, 4):
                    raise MpsError(f"bad BOUNDS line {stripped!r}", lineno)
                col, val = fields[2], 0.0
            else:
                raise MpsError(f"unsupported bound type {fields[0]!r}", lineno)
            if col not in var_seen:
                raise UndeclaredReference(f"unknown column {col!r}", lineno)
            if kind == "UP":
                bounds_hi[col] = val
            elif kind == "LO":
                bounds_lo[col] = val
            elif kind == "FX":
                bounds_lo[col] = val
                bounds_hi[col] = val
            elif kind == "FR":
                bounds_lo[col] = -INF
                bounds_hi[col] = INF
            elif kind == "MI":
                bounds_lo[col] = -INF
            # PL is the default upper bound; nothing to record.
        elif section in (None, "NAME"):
            raise MpsError(f"data line outside any section: {stripped!r}", lineno)

    if obj_row is None:
        raise MpsError("no objective (N) row declared")

    rows = []
    for rname in row_order:
        rows.append(
            Row(
                name=rname,
                relation=_RELATION[row_kind[rname]],
                coeffs=coeffs[rname],
                rhs=rhs.get(rname, 0.0),
                range=ranges.get(rname),
            )
        )
    bounds = {}
    for v in var_order:
        lo = bounds_lo.get(v, 0.0)
        hi = bounds_hi.get(v, INF)
        if (lo, hi) != (0.0, INF):
            bounds[v] = (lo, hi)
    return GeneralLP(
        name=name,
        sense=sense,
        var_names=var_order,
        objective=objective,
        rows=rows,
        bounds=bounds,
        objective_offset=obj_offset,
    )


def read_mps(path: str | os.PathLike) -> GeneralLP:
    """Parse an MPS file (the filename stem is the fallback problem name)."""
    path = os.fspath(path)
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stem = os.path.splitext(os.path.basename(path))[0]
    return parse_mps(text, default_name=stem)


def write_mps(lp: GeneralLP) -> str:
    """Serialize a GeneralLP to free-format MPS.

    Numbers are written with repr so parse_mps(write_mps(lp)) reproduces
    every coefficient exactly.
    """
    out = [f"NAME          {lp.name}" if lp.name else "NAME"]
    if lp.sense == "max":
        out.append("OBJSENSE")
        out.append("    MAX")
    out.append("ROWS")
    out.append(" N  OBJ")
    kind = {"<=": "L", ">=": "G", "=": "E"}
    for row in lp.rows:
        out.append(f" {kind[row.relation]}  {row.name}")
    out.append("COLUMNS")
    for v in lp.var_names:
        emitted = False
        if v in lp.objective:
            out.append(f"    {v}  OBJ  {lp.objective[v]!r}")
            emitted = True
        for row in lp.rows:
            if v in row.coeffs:
                out.append(f"    {v}  {row.name}  {row.coeffs[v]!r}")
                emitted = True
        if not emitted:
            # A column exists only through its COLUMNS entries; pin ones
            # used nowhere with an explicit zero objective coefficient.
            out.append(f"    {v}  OBJ  0.0")
    out.append("RHS")
    if lp.objective_offset:
        out.append(f"    RHS  OBJ  {-lp.objective_offset!r}")
    for row in lp.rows:
        if row.rhs:
            out.append(f"    RHS  {row.name}  {row.rhs!r}")
    if any(row.range is not None for row in lp.rows):
        out.append("RANGES")
        for row in lp.rows:
            if row.range is not None:
                out.append(f"    RNG  {row.name}  {row.range!r}")
    if lp.bounds:
        out.append("BOUNDS")
        for v in lp.var_names:
            if v not in lp.bounds:
                continue
            lo, hi = lp.bounds[v]
            if lo == hi:
                out.append(f" FX BND  {v}  {lo!r}")
                continue
            if lo == -INF and hi == INF:
                out.append(f" FR BND  {v}")
                continue
            if lo == -INF:
                out.append(f" MI BND  {v}")
            elif lo != 0.0:
                out.append(f" LO BND  {v}  {lo!r}")
            if hi != INF:
                out.append(f" UP BND  {v}  {hi!r}")
    out.append("ENDATA")
    return "\n".join(out) + "\n"


def _jsonable(value):
    if isinstance(value, np.ndarray):
        return [float(x) for x in value]
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def report_dict(report) -> dict:
    """Solve report as a plain dict with a fixed key order."""
    mn = report.m + report.n
    terminal = str(report.terminal) if report.terminal is not None else None
    return {
        "problem": report.name,
        "status_primal": report.primal_status,
        "status_dual": report.dual_status,
        "terminal_class": terminal,
        "objective": report.objective,
        "objective_canonical": report.objective_canonical,
        "iterations": report.iterations,
        "rows": report.m,
        "cols": report.n,
        "iteration_ratio": report.iterations / mn if mn else 0.0,
        "cycle": report.cycle_flag,
        "degenerate_rows": report.degenerate_rows,
        "degenerate_cols": report.degenerate_cols,
        "has_alternative_optima": report.has_alternative_optima,
        "solution": _jsonable(report.solution),
        "dual_solution": _jsonable(report.dual_solution),
        "bound_duals": _jsonable(report.bound_duals),
        "alternatives": _jsonable(report.alternatives),
        "certificates": _jsonable(report.certificates),
    }


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def emit_report(report, fmt: str = "json") -> str:
    """Serialize a SolveReport to machine JSON or a human text block.

    Both forms are deterministic: identical reports serialize to
    byte-identical strings.
    """
    if fmt == "json":
        return json.dumps(report_dict(report), indent=2)
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")

    lines = [f"Problem    : {report.name or '(unnamed)'}"]
    lines.append(f"Size       : {report.m} rows x {report.n} cols (canonical)")
    terminal = str(report.terminal) if report.terminal is not None else "(none)"
    lines.append(f"Terminal   : {terminal}")
    obj = _fmt(report.objective) if report.objective is not None else "-"
    lines.append(f"Objective  : {obj}")
    mn = report.m + report.n
    ratio = report.iterations / mn if mn else 0.0
    lines.append(f"Iterations : {report.iterations} ({ratio:.3g} per row+col)")
    lines.append(f"Cycle      : {'yes' if report.cycle_flag else 'no'}")
    if report.has_alternative_optima:
        lines.append("Alternatives : optimal basis is not unique")
    if report.solution:
        nz = {k: v for k, v in report.solution.items() if abs(v) > 0}
        lines.append("Nonzero solution values:")
        for k, v in nz.items():
            lines.append(f"    {k} = {_fmt(v)}")
    for key, cert in (report.certificates or {}).items():
        witness = cert.get("label", "")
        lines.append(f"Certificate {key}: {witness}")
    return "\n".join(lines) + "\n"


def iter_mps_files(directory: str | os.PathLike) -> Iterable[str]:
    """Paths of *.mps files in a directory, sorted by name."""
    directory = os.fspath(directory)
    names = sorted(
        f for f in os.listdir(directory) if f.lower().endswith(".mps")
    )
    return [os.path.join(directory, f) for f in names]
