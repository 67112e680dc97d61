"""Hot kernels with a compiled core and a pure-Python fallback.

The compiled ``_hqr`` extension is used when it was built; otherwise (or when
``DISCSPEC_PURE_PYTHON=1`` is set) the numpy implementation in ``hqr_py`` is
used. ``BACKEND`` names the selected implementation.
"""

import os

from . import hqr_py

if os.environ.get("DISCSPEC_PURE_PYTHON", "") not in ("", "0"):
    hqr_eigvals = hqr_py.hqr_eigvals
    BACKEND = "python"
else:
    try:
        from ._hqr import hqr_eigvals
        BACKEND = "cython"
    except ImportError:
        hqr_eigvals = hqr_py.hqr_eigvals
        BACKEND = "python"

__all__ = ["hqr_eigvals", "hqr_py", "BACKEND"]
