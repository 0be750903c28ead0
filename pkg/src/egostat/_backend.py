"""Kernel backend selection.

Hot loops (triangle enumeration, 4-clique counting, BFS) exist twice: a
numba ``@njit`` version and a vectorised numpy version. The numba path is
used when numba imports cleanly, unless ``EGOSTAT_DISABLE_NUMBA`` is set to
a truthy value. Both paths return identical integers.
"""

import os

_FALSY = {"", "0", "false", "no", "off"}


def numba_disabled():
    return os.environ.get("EGOSTAT_DISABLE_NUMBA", "").strip().lower() not in _FALSY


def _load_numba():
    if numba_disabled():
        return None
    try:
        from . import _kernels_nb
    except ImportError:  # numba missing or broken
        return None
    return _kernels_nb


_nb = _load_numba()

BACKEND = "numba" if _nb is not None else "numpy"


def get_kernels(backend=None):
    """Return the kernel module for ``backend`` ("numba", "numpy" or None for default)."""
    backend = backend or BACKEND
    if backend == "numba":
        if _nb is None:
            from . import _kernels_nb  # raises ImportError if unavailable
            return _kernels_nb
        return _nb
    if backend == "numpy":
        from . import _kernels_np
        return _kernels_np
    raise ValueError(f"unknown backend {backend!r}")
