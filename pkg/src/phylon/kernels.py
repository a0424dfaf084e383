"""Kernel selection.

The compiled extension is used when it was built; setting the environment
variable ``PHYLON_PURE_PYTHON=1`` forces the pure-Python fallback.
"""
import os

from . import _pykernels

BACKEND = "python"
mul_range = _pykernels.mul_range
axpy = _pykernels.axpy

if os.environ.get("PHYLON_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels
    except ImportError:
        _ckernels = None
    else:
        mul_range = _ckernels.mul_range
        axpy = _ckernels.axpy
        BACKEND = "cython"
else:
    _ckernels = None


def backends():
    """Available kernel modules keyed by name."""
    out = {"python": _pykernels}
    if _ckernels is not None:
        out["cython"] = _ckernels
    else:
        try:
            from . import _ckernels as ck
        except ImportError:
            pass
        else:
            out["cython"] = ck
    return out
