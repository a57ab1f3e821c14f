"""Kernel selection.

The compiled kernels are used when importable; set ``CUBICINV_PURE_PYTHON=1``
to force the pure-Python fallback.
"""
import os

from . import _pykernels

if os.environ.get("CUBICINV_PURE_PYTHON"):
    kernels = _pykernels
else:
    try:
        from . import _ckernels as kernels
    except ImportError:
        kernels = _pykernels

BACKEND = "cython" if kernels is not _pykernels else "python"


def available_backends():
    """Map of backend name to kernel module for every importable backend."""
    found = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        found["cython"] = _ckernels
    return found
