"""Kernel backend selection.

The environment variable XCDOF_BACKEND picks the implementation:

    auto   (default) use the JIT kernels when numba imports, else numpy
    numba  require the JIT kernels, fail if numba is unavailable
    numpy  force the pure-numpy fallback

Both backends expose the same functions and produce identical results;
benchmarks/bench_kernels.py compares their speed.
"""

import os

ENV_VAR = "XCDOF_BACKEND"


def _select():
    choice = os.environ.get(ENV_VAR, "auto").strip().lower()
    if choice not in ("auto", "numba", "numpy"):
        raise RuntimeError(f"{ENV_VAR} must be auto, numba or numpy, got {choice!r}")
    if choice in ("auto", "numba"):
        try:
            from . import _kernels_numba as impl

            return impl, "numba"
        except ImportError:
            if choice == "numba":
                raise
    from . import _kernels_numpy as impl

    return impl, "numpy"


kernels, BACKEND_NAME = _select()
kernels.warmup()
