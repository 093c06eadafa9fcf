"""Backend selection for the numeric kernels.

Numba is used when importable unless ``TORSEMI_NO_NUMBA`` is set to a truthy
value; the pure-numpy kernels are always available.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

_DISABLED = os.environ.get("TORSEMI_NO_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _DISABLED:
        raise ImportError("numba disabled by TORSEMI_NO_NUMBA")
    from numba import njit

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f


_state = {"numba": HAS_NUMBA}


def numba_enabled() -> bool:
    return _state["numba"]


def backend() -> str:
    return "numba" if _state["numba"] else "numpy"


def set_backend(name: str) -> None:
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAS_NUMBA:
        raise RuntimeError("numba is not available")
    _state["numba"] = name == "numba"


@contextmanager
def using_backend(name: str):
    old = backend()
    set_backend(name)
    try:
        yield
    finally:
        set_backend(old)
