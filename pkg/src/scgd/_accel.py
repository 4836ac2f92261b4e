"""Backend selection for the numeric kernels.

Set ``SCGD_BACKEND=numpy`` (or ``SCGD_DISABLE_NUMBA=1``) before import to force the
pure-numpy code path.  When numba is not importable the numpy path is used as well.
"""
import os
import warnings

_requested = os.environ.get("SCGD_BACKEND", "").strip().lower()
if os.environ.get("SCGD_DISABLE_NUMBA", "").strip() not in ("", "0"):
    _requested = "numpy"

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda fn: fn

if _requested not in ("", "numba", "numpy"):
    warnings.warn(f"unknown SCGD_BACKEND={_requested!r}, using default", RuntimeWarning)
    _requested = ""

if _requested == "numba" and not HAS_NUMBA:  # pragma: no cover
    warnings.warn("numba requested but not installed; using numpy kernels", RuntimeWarning)

BACKEND = "numba" if HAS_NUMBA and _requested != "numpy" else "numpy"

__all__ = ["BACKEND", "HAS_NUMBA", "njit"]
