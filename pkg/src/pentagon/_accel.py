"""JIT switch.

Kernels are written as plain loops over integer arrays.  When numba is
importable and ``PENTAGON_DISABLE_JIT`` is unset they are compiled with
``numba.njit``; otherwise the dispatch in :mod:`pentagon.kernels` routes the
vectorisable ones to numpy implementations and runs the rest interpreted.
"""
import os

_DISABLED = os.environ.get("PENTAGON_DISABLE_JIT", "").strip().lower() in {
    "1", "true", "yes", "on",
}

try:
    if _DISABLED:
        raise ImportError
    import numba
    HAS_NUMBA = True
except ImportError:
    numba = None
    HAS_NUMBA = False


def jit(fn):
    if HAS_NUMBA:
        return numba.njit(cache=True, nogil=True)(fn)
    return fn
