"""Backend selection for exhaustive evaluation.

The compiled extension is used when it imports and ``DIALGEBRA_FORGE_PURE``
is unset; a range that overflows int64 is recomputed by the Python kernel.
"""

from __future__ import annotations

import os

from . import _pykernel

try:
    if os.environ.get("DIALGEBRA_FORGE_PURE"):
        raise ImportError("pure backend requested")
    from . import _kernel as _ckernel
except ImportError:
    _ckernel = None

BACKEND = "cython" if _ckernel is not None else "python"


def run(prog, lo, hi, cap, backend=None):
    backend = backend or BACKEND
    if backend == "cython":
        if _ckernel is None:
            raise RuntimeError("compiled kernel is not available")
        try:
            return _ckernel.run(prog, lo, hi, cap)
        except OverflowError:
            pass
    elif backend != "python":
        raise ValueError(f"unknown backend {backend!r}")
    return _pykernel.run(prog, lo, hi, cap)
