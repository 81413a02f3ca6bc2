"""Select between numba-compiled kernels and the plain Python/numpy path.

Set ``BURATTI_NO_NUMBA=1`` to run every kernel interpreted. The kernels are
written so that both paths execute the same source.
"""
import os

NUMBA_DISABLED = os.environ.get("BURATTI_NO_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    if NUMBA_DISABLED:
        raise ImportError
    import numba as _numba
except ImportError:
    _numba = None

HAVE_NUMBA = _numba is not None


def njit(func):
    """Compile ``func`` with numba when enabled, else return it untouched."""
    if _numba is None:
        return func
    return _numba.njit(cache=True, nogil=True)(func)


def backend() -> str:
    return "numba" if HAVE_NUMBA else "python"
