"""Shared relative tolerance for every approximate comparison.

A single configurable value governs all equality-with-tolerance tests in the
library: two scalars a, b are considered equal when

    |a - b| <= tol * max(1, |a|, |b|)

which behaves absolutely near zero and relatively for large values.
"""

from __future__ import annotations

import numpy as np

DEFAULT_TOLERANCE = 1e-9

_current_tolerance = DEFAULT_TOLERANCE


def get_tolerance() -> float:
    """Return the tolerance used when an operation receives ``tol=None``."""
    return _current_tolerance


def set_tolerance(tol: float) -> None:
    """Set the library-wide default tolerance (must be positive)."""
    global _current_tolerance
    if not (tol > 0.0):
        raise ValueError(f"tolerance must be positive, got {tol!r}")
    _current_tolerance = float(tol)


def resolve_tolerance(tol: float | None) -> float:
    """Turn an optional per-call override into a concrete tolerance."""
    if tol is None:
        return _current_tolerance
    if not (tol > 0.0):
        raise ValueError(f"tolerance must be positive, got {tol!r}")
    return float(tol)


def close(a: float, b: float, tol: float | None = None) -> bool:
    """Scalar equality under the library tolerance rule."""
    t = resolve_tolerance(tol)
    return abs(a - b) <= t * max(1.0, abs(a), abs(b))


def leq(a: float, b: float, tol: float | None = None) -> bool:
    """One-sided comparison: a <= b up to the tolerance slack."""
    t = resolve_tolerance(tol)
    return a <= b + t * max(1.0, abs(a), abs(b))


def allclose(x, y, tol: float | None = None) -> bool:
    """Elementwise version of :func:`close` for arrays of equal shape."""
    t = resolve_tolerance(tol)
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        return False
    bound = t * np.maximum(1.0, np.maximum(np.abs(x), np.abs(y)))
    return bool((np.abs(x - y) <= bound).all())
