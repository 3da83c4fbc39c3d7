"""Kernel backend selection.

The compiled extension (``maxjsr._native``) is preferred when present; the
numpy fallback is semantically and bitwise identical, only slower.  Set the
environment variable ``MAXJSR_PURE_PYTHON=1`` before import to force the
fallback (used by the benchmark and the backend-equivalence tests).
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

if os.environ.get("MAXJSR_PURE_PYTHON", "").strip() not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _native as _impl

        BACKEND = "native"
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _kernels_py
        BACKEND = "python"


def _c64(a: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.float64)


def max_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Max-times product of two square arrays of equal dimension."""
    return np.asarray(_impl.max_mul(_c64(a), _c64(b)))


def karp_table(w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Best-walk DP table from node 0 over log-domain weights ``w``."""
    d, parent = _impl.karp_table(_c64(w))
    return np.asarray(d), np.asarray(parent)
