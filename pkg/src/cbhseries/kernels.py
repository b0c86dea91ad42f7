"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``CBHSERIES_FORCE_PYTHON_KERNEL=1`` to skip the extension (used by the
benchmark and by tests that exercise the fallback path).
"""

from __future__ import annotations

import os

from ._kernels_py import W_ALT_HARMONIC, W_HARMONIC, W_HARMONIC_PREV, W_NONE

if os.environ.get("CBHSERIES_FORCE_PYTHON_KERNEL"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
weighted_partial_sum = _impl.weighted_partial_sum

__all__ = [
    "BACKEND",
    "weighted_partial_sum",
    "W_NONE",
    "W_HARMONIC",
    "W_ALT_HARMONIC",
    "W_HARMONIC_PREV",
]
