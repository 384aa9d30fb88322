"""Linear programming over the compact symmetric tableau.

The tableau keeps the primal and dual problems in one dense block and
pivots with a symmetric primal-dual selection strategy: six pivot schemes
searched in tiers, each candidate scored by the exact change of the
combined infeasibility count, no artificial variables and no two-phase
split.  Terminal tableaus classify both problems at once into the six
class pairs (optimal / unbounded solution set / infeasible, per side).

Modules
-------
model     general LP container, canonical form, solution map-back
tableau   the dense tableau, pivot exchange, signatures, basic points
pivoting  scheme enumeration, scoring, tie-breaking, selection
solver    solve loop, cycle guard, terminal classification, reports
oracle    exhaustive basis-enumeration checker and pivot simulator
mps_io    MPS parsing/writing, report serialization
cli       the ``cstlp`` command
kernels   compiled/fallback numeric core selection
"""

from .errors import (
    CstlpError,
    DuplicateRow,
    InfeasibleBounds,
    IterationLimit,
    MalformedNumber,
    MpsError,
    NotTerminal,
    ShapeError,
    TooLarge,
    UndeclaredReference,
    UnknownSection,
    ZeroPivot,
)
from .kernels import COMPILED
from .model import (
    CanonicalLP,
    GeneralLP,
    MappedSolution,
    Row,
    TransformRecord,
    canonicalize,
    map_back,
)
from .mps_io import emit_report, parse_mps, read_mps, write_mps
from .oracle import OracleVerdict, oracle_solve, simulate_delta_ii
from .pivoting import (
    DEFAULT_ORDER,
    PivotCandidate,
    enumerate_candidates,
    lem,
    predicted_delta_ii,
    select_pivot,
    tie_break_lex,
)
from .solver import (
    Classification,
    IterationRecord,
    SolveOptions,
    SolveReport,
    TerminalClass,
    classify_terminal,
    detect_cycle,
    solve,
    solve_arrays,
)
from .tableau import BasicSolution, Label, Tableau, initial_tableau

__version__ = "0.1.0"

__all__ = [
    "BasicSolution",
    "CanonicalLP",
    "Classification",
    "COMPILED",
    "CstlpError",
    "DEFAULT_ORDER",
    "DuplicateRow",
    "GeneralLP",
    "InfeasibleBounds",
    "IterationLimit",
    "IterationRecord",
    "Label",
    "MalformedNumber",
    "MappedSolution",
    "MpsError",
    "NotTerminal",
    "OracleVerdict",
    "PivotCandidate",
    "Row",
    "ShapeError",
    "SolveOptions",
    "SolveReport",
    "Tableau",
    "TerminalClass",
    "TooLarge",
    "TransformRecord",
    "UndeclaredReference",
    "UnknownSection",
    "ZeroPivot",
    "canonicalize",
    "classify_terminal",
    "detect_cycle",
    "emit_report",
    "enumerate_candidates",
    "initial_tableau",
    "lem",
    "map_back",
    "oracle_solve",
    "parse_mps",
    "predicted_delta_ii",
    "read_mps",
    "select_pivot",
    "simulate_delta_ii",
    "solve",
    "solve_arrays",
    "tie_break_lex",
    "write_mps",
]
