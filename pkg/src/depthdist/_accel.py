"""JIT switch for the enumeration kernels.

Set ``DEPTHDIST_DISABLE_NUMBA=1`` to force the pure-numpy code paths even
when numba is importable.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_FLAG = os.environ.get("DEPTHDIST_DISABLE_NUMBA", "").strip().lower()

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and _FLAG in ("", "0", "false", "no")

NUMBA_OPTS = {"cache": True, "nogil": True}


def njit(func):
    """Compile ``func`` with numba when available; otherwise return it as is."""
    if numba is None:
        return func
    return numba.njit(**NUMBA_OPTS)(func)
