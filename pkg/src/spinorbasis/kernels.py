"""Kernel backend selection.

The compiled extension is used when it was built; otherwise the numpy
fallback is used.  Set ``SPINORBASIS_KERNELS=python`` to force the
fallback (``compiled`` makes a missing extension an error).
"""

import os

from . import _kernels_py

_choice = os.environ.get("SPINORBASIS_KERNELS", "auto").strip().lower()

if _choice not in ("auto", "python", "compiled"):
    raise ImportError(f"SPINORBASIS_KERNELS must be auto, python or compiled, not {_choice!r}")

_impl = _kernels_py
BACKEND = "python"
if _choice != "python":
    try:
        from . import _ckernels as _impl  # noqa: F811

        BACKEND = "compiled"
    except ImportError:
        if _choice == "compiled":
            raise
        _impl = _kernels_py

legendre_table = _impl.legendre_table
laguerre_table = _impl.laguerre_table

__all__ = ["BACKEND", "legendre_table", "laguerre_table"]
