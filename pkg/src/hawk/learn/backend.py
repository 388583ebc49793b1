"""Kernel backend selection: compiled extension if built, numpy otherwise.

Set HAWK_PURE_PYTHON=1 to force the numpy fallback (used by the benchmark
and the backend-equivalence tests). Each backend is deterministic; the two
agree to floating-point rounding but not bit-for-bit.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("HAWK_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND
lstm_forward = _impl.lstm_forward
lstm_backward = _impl.lstm_backward


def numpy_kernels():
    return _kernels_py
