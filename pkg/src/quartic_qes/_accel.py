"""Numba switch.

Set ``QUARTIC_QES_NO_NUMBA=1`` to force the pure-numpy kernels. Without
numba installed the numpy path is used automatically.
"""

from __future__ import annotations

import os

_DISABLED = os.environ.get("QUARTIC_QES_NO_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _DISABLED:
        raise ImportError
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    HAVE_NUMBA = False
    _njit = None

USE_NUMBA = HAVE_NUMBA and not _DISABLED


def njit(*args, **kwargs):
    """``numba.njit(cache=True)`` when available, identity otherwise."""
    kwargs.setdefault("cache", True)

    def wrap(f):
        if _njit is None:
            return f
        return _njit(**kwargs)(f)

    if len(args) == 1 and callable(args[0]):
        return wrap(args[0])
    return wrap
