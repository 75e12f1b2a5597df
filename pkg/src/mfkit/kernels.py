"""Selects the segment-variance kernel at import time.

The compiled extension is preferred; the NumPy implementation is the
fallback. ``MFKIT_KERNEL=numpy`` or ``MFKIT_KERNEL=compiled`` forces one
backend (the latter raises if the extension is missing).
"""

from __future__ import annotations

import os

_requested = os.environ.get("MFKIT_KERNEL", "auto").lower()
if _requested not in ("auto", "compiled", "numpy"):
    raise RuntimeError(f"MFKIT_KERNEL must be auto, compiled or numpy, got {_requested!r}")

if _requested == "numpy":
    from ._varcore_py import segment_variances

    KERNEL_BACKEND = "numpy"
else:
    try:
        from ._varcore import segment_variances

        KERNEL_BACKEND = "compiled"
    except ImportError:
        if _requested == "compiled":
            raise
        from ._varcore_py import segment_variances

        KERNEL_BACKEND = "numpy"

__all__ = ["segment_variances", "KERNEL_BACKEND"]
