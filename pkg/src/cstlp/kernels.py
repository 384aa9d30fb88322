"""Selects the tableau kernel backend at import time.

The compiled Cython core is preferred; the numpy fallback is bit-identical
and is used when the extension is missing or when ``CSTLP_PURE_PYTHON=1``
is set in the environment.
"""

from __future__ import annotations

import os

from . import _core_py

if os.environ.get("CSTLP_PURE_PYTHON", "") not in ("", "0"):
    impl = _core_py
else:
    try:
        from . import _core as impl  # type: ignore[no-redef]
    except ImportError:
        impl = _core_py

COMPILED: bool = bool(impl.COMPILED)

pivot_update = impl.pivot_update
count_infeasible = impl.count_infeasible
predict_delta_ii = impl.predict_delta_ii
predict_delta_ii_many = impl.predict_delta_ii_many
