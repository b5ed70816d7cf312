"""Kernel backend selection.

Hot table scans exist twice: a numba @njit implementation and a pure-numpy
one with identical signatures and identical (deterministic) results.  The
active backend is chosen by the BROUWERLAB_BACKEND environment variable:

    BROUWERLAB_BACKEND=numba   force numba (error if unavailable)
    BROUWERLAB_BACKEND=numpy   force the pure-numpy path
    unset                      numba when importable, else numpy

BROUWERLAB_JOBS provides the default worker count for chunked scans.
"""

from __future__ import annotations

import os
from types import ModuleType


_cached: ModuleType | None = None
_cached_name: str | None = None


def backend_name() -> str:
    return os.environ.get("BROUWERLAB_BACKEND", "").strip().lower() or "auto"


def get_kernels() -> ModuleType:
    """Return the active kernel module (resolved once per requested name)."""
    global _cached, _cached_name
    want = backend_name()
    if _cached is not None and _cached_name == want:
        return _cached
    if want == "numpy":
        from . import _kernels_numpy as mod
    elif want == "numba":
        from . import _kernels_numba as mod
    else:
        try:
            from . import _kernels_numba as mod
        except ImportError:
            from . import _kernels_numpy as mod
    _cached, _cached_name = mod, want
    return mod


def active_backend() -> str:
    mod = get_kernels()
    return getattr(mod, "BACKEND", "unknown")


def default_jobs() -> int:
    raw = os.environ.get("BROUWERLAB_JOBS", "").strip()
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return 1
