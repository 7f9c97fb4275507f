"""Backend selection for the compiled kernels.

Set ``TOEPLITZ_LADDER_NO_JIT=1`` to force the pure-numpy kernels. The flag
only chooses an implementation; both backends compute the same quantities.
"""

from __future__ import annotations

import os

ENV_FLAG = "TOEPLITZ_LADDER_NO_JIT"

try:
    import numba as _numba
except ImportError:  # pragma: no cover - exercised only without numba
    _numba = None

HAVE_NUMBA = _numba is not None
USE_JIT = HAVE_NUMBA and os.environ.get(ENV_FLAG, "").strip().lower() not in {
    "1",
    "true",
    "yes",
    "on",
}


def njit(func):
    """Compile ``func`` with numba when available, else return it unchanged."""
    if _numba is None:  # pragma: no cover
        return func
    return _numba.njit(cache=True, nogil=True)(func)


def backend_name() -> str:
    return "numba" if USE_JIT else "numpy"
