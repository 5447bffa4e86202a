"""Numba switch.

Set ``PERFCODE_DISABLE_NUMBA=1`` to force the pure-numpy kernels (also the
automatic fallback when numba is not importable).
"""
import os

_DISABLED = os.environ.get("PERFCODE_DISABLE_NUMBA", "").lower() in ("1", "true", "yes")

try:
    import numba
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _DISABLED


def njit(fn=None, **kwargs):
    kwargs.setdefault("cache", True)
    kwargs.setdefault("nogil", True)

    def wrap(f):
        if not HAVE_NUMBA:
            return f
        return numba.njit(**kwargs)(f)

    return wrap(fn) if fn is not None else wrap


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
