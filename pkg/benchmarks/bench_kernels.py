"""Compare the compiled tableau kernels against the numpy fallback.

The two backends are bit-identical by construction (the test suite holds
them to exact equality), so this script only measures speed:

    python benchmarks/bench_kernels.py [--size 200] [--pivots 400] ...

Kernel rows call both implementations in-process; the full-solve row runs
each backend in a subprocess because the choice is made once, at import
time, from ``CSTLP_PURE_PYTHON``.
"""
from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from cstlp import _core_py

try:
    from cstlp import _core
except ImportError:
    _core = None


def _fresh_blocks(rng: np.random.Generator, m: int, n: int):
    alpha = rng.uniform(0.5, 2.0, (m, n)) * rng.choice([-1.0, 1.0], (m, n))
    beta = rng.uniform(-1.0, 1.0, m)
    gamma = rng.uniform(-1.0, 1.0, n)
    return alpha, beta, gamma


def bench_pivot_update(impl, size: int, pivots: int, repeat: int, seed: int) -> float:
    """Best wall time for `pivots` in-place exchanges on a size x size block.

    Each chosen cell is pivoted twice (an exchange and its inverse), which
    keeps entries bounded while exercising the full update arithmetic.
    """
    rng = np.random.default_rng(seed)
    cells = rng.integers(0, size, (pivots // 2, 2))
    best = float("inf")
    for _ in range(repeat):
        alpha, beta, gamma = _fresh_blocks(np.random.default_rng(seed), size, size)
        delta = 0.0
        start = time.perf_counter()
        for i, j in cells:
            delta = impl.pivot_update(alpha, beta, gamma, i, j, delta)
            delta = impl.pivot_update(alpha, beta, gamma, i, j, delta)
        best = min(best, time.perf_counter() - start)
    return best


def bench_predict_many(impl, size: int, repeat: int, seed: int) -> float:
    """Best wall time for scoring every cell of a size x size block."""
    alpha, beta, gamma = _fresh_blocks(np.random.default_rng(seed), size, size)
    rows = np.repeat(np.arange(size, dtype=np.int64), size)
    cols = np.tile(np.arange(size, dtype=np.int64), size)
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        impl.predict_delta_ii_many(alpha, beta, gamma, rows, cols, 1e-9)
        best = min(best, time.perf_counter() - start)
    return best


_SOLVE_CHILD = """
import time
import numpy as np
from cstlp import kernels
from cstlp.solver import solve_arrays

rng = np.random.default_rng({seed})
m = n = {size}
A = rng.uniform(-1.0, 1.0, (m, n))
b = rng.uniform(0.5, 2.0, m)
c = rng.uniform(-1.0, 1.0, n)
start = time.perf_counter()
report = solve_arrays(A, b, c)
print(kernels.COMPILED, time.perf_counter() - start, report.iterations,
      report.primal_status, report.dual_status)
"""


def bench_full_solve(pure: bool, size: int, seed: int):
    """Run one random dense solve in a subprocess and report its timing."""
    env = dict(os.environ, CSTLP_PURE_PYTHON="1" if pure else "0")
    out = subprocess.run(
        [sys.executable, "-c", _SOLVE_CHILD.format(seed=seed, size=size)],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    ).stdout.split()
    compiled, seconds, iterations = out[0] == "True", float(out[1]), int(out[2])
    if compiled == pure:
        raise RuntimeError("subprocess picked the wrong backend")
    return seconds, iterations, (out[3], out[4])


def _row(label: str, compiled: float | None, fallback: float) -> str:
    if compiled is None:
        return f"{label:<38} {'-':>12} {fallback * 1e3:>11.2f} ms {'-':>9}"
    return (
        f"{label:<38} {compiled * 1e3:>9.2f} ms {fallback * 1e3:>11.2f} ms"
        f" {fallback / compiled:>8.1f}x"
    )


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=200, help="kernel block dimension")
    ap.add_argument("--pivots", type=int, default=400, help="exchanges per trial")
    ap.add_argument("--repeat", type=int, default=5, help="trials per row (best kept)")
    ap.add_argument("--solve-size", type=int, default=80, help="full-solve dimension")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if _core is None:
        print("compiled core: not built -- timing the numpy fallback only\n")
    else:
        print("compiled core: available\n")

    header = f"{'benchmark':<38} {'compiled':>12} {'fallback':>14} {'speedup':>9}"
    print(header)
    print("-" * len(header))

    label = f"pivot_update ({args.size}x{args.size}, {args.pivots} exchanges)"
    fb = bench_pivot_update(_core_py, args.size, args.pivots, args.repeat, args.seed)
    cc = (
        None
        if _core is None
        else bench_pivot_update(_core, args.size, args.pivots, args.repeat, args.seed)
    )
    print(_row(label, cc, fb))

    label = f"predict_delta_ii_many ({args.size * args.size} cells)"
    fb = bench_predict_many(_core_py, args.size, args.repeat, args.seed)
    cc = None if _core is None else bench_predict_many(_core, args.size, args.repeat, args.seed)
    print(_row(label, cc, fb))

    fb, fb_iters, fb_cls = bench_full_solve(True, args.solve_size, args.seed)
    if _core is None:
        print(_row(f"full solve ({args.solve_size}x{args.solve_size})", None, fb))
    else:
        cc, cc_iters, cc_cls = bench_full_solve(False, args.solve_size, args.seed)
        if (cc_iters, cc_cls) != (fb_iters, fb_cls):
            raise RuntimeError("backends disagreed on the solve path")
        print(
            _row(
                f"full solve ({args.solve_size}x{args.solve_size}, "
                f"{cc_iters} iterations)",
                cc,
                fb,
            )
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
