"""Kernel backend selection.

The compiled extension is preferred; set ``RQAOA_PURE_PYTHON=1`` to force the
NumPy fallback.
"""

import os

from . import _pykernels

if os.environ.get("RQAOA_PURE_PYTHON"):
    kernels = _pykernels
else:
    try:
        from . import _kernels as kernels
    except ImportError:
        kernels = _pykernels

BACKEND = "python" if kernels is _pykernels else "cython"
