"""Dense arithmetic over the max-times semiring (R+, max, *).

Values are nonnegative double-precision floats; 0 is the additive identity
and 1 the multiplicative one.  ``MaxMatrix`` and ``MaxVector`` are immutable
wrappers around numpy arrays, so instances can be shared across threads and
every operation returns a fresh value.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DimensionMismatchError, DivergenceError, InvalidEntryError
from .tolerance import leq, resolve_tolerance


def _checked_array(values, ndim: int, what: str) -> np.ndarray:
    arr = np.array(values, dtype=np.float64, order="C")
    if arr.ndim != ndim:
        raise InvalidEntryError(f"{what} must be {ndim}-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise InvalidEntryError(f"{what} must be nonempty")
    if not np.isfinite(arr).all():
        idx = np.argwhere(~np.isfinite(arr))[0]
        raise InvalidEntryError(f"{what} entry at {tuple(idx)} is not finite")
    if (arr < 0).any():
        idx = np.argwhere(arr < 0)[0]
        raise InvalidEntryError(f"{what} entry at {tuple(idx)} is negative")
    arr.setflags(write=False)
    return arr


class MaxMatrix:
    """Square matrix with finite nonnegative entries under (max, *)."""

    __slots__ = ("_data",)

    def __init__(self, entries):
        arr = _checked_array(entries, 2, "matrix")
        if arr.shape[0] != arr.shape[1]:
            raise InvalidEntryError(f"matrix must be square, got shape {arr.shape}")
        self._data = arr

    @property
    def data(self) -> np.ndarray:
        """Read-only numpy view of the entries."""
        return self._data

    @property
    def n(self) -> int:
        return self._data.shape[0]

    @classmethod
    def identity(cls, n: int) -> "MaxMatrix":
        return cls(np.eye(n))

    @classmethod
    def zeros(cls, n: int) -> "MaxMatrix":
        return cls(np.zeros((n, n)))

    def transpose(self) -> "MaxMatrix":
        return MaxMatrix(self._data.T)

    def __matmul__(self, other) -> "MaxMatrix":
        return max_mul(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MaxMatrix):
            return NotImplemented
        return bool(np.array_equal(self._data, other._data))

    __hash__ = None

    def __repr__(self) -> str:
        return f"MaxMatrix({self._data.tolist()!r})"


class MaxVector:
    """Vector with finite nonnegative entries."""

    __slots__ = ("_data",)

    def __init__(self, entries):
        self._data = _checked_array(entries, 1, "vector")

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def n(self) -> int:
        return self._data.shape[0]

    def is_positive(self) -> bool:
        """True when every component is strictly positive."""
        return bool((self._data > 0).all())

    @classmethod
    def ones(cls, n: int) -> "MaxVector":
        return cls(np.ones(n))

    def __eq__(self, other) -> bool:
        if not isinstance(other, MaxVector):
            return NotImplemented
        return bool(np.array_equal(self._data, other._data))

    __hash__ = None

    def __repr__(self) -> str:
        return f"MaxVector({self._data.tolist()!r})"


def as_max_matrix(value) -> MaxMatrix:
    """Coerce an array-like into a :class:`MaxMatrix` (no-op on instances)."""
    if isinstance(value, MaxMatrix):
        return value
    return MaxMatrix(value)


def as_max_vector(value) -> MaxVector:
    if isinstance(value, MaxVector):
        return value
    return MaxVector(value)


def _same_dimension(a: MaxMatrix, b: MaxMatrix) -> None:
    if a.n != b.n:
        raise DimensionMismatchError(f"dimension mismatch: {a.n} vs {b.n}")


def max_mul(a, b) -> MaxMatrix:
    """Max-times product: (a (x) b)[i, j] = max_k a[i, k] * b[k, j]."""
    am, bm = as_max_matrix(a), as_max_matrix(b)
    _same_dimension(am, bm)
    return MaxMatrix(kernels.max_mul(am.data, bm.data))


def max_add(a, b) -> MaxMatrix:
    """Entrywise maximum (the semiring sum)."""
    am, bm = as_max_matrix(a), as_max_matrix(b)
    _same_dimension(am, bm)
    return MaxMatrix(np.maximum(am.data, bm.data))


def max_power(a, p: int) -> MaxMatrix:
    """p-th max-times power; the 0-th power is the identity."""
    am = as_max_matrix(a)
    if p < 0 or int(p) != p:
        raise ValueError(f"power must be a nonnegative integer, got {p!r}")
    result = np.eye(am.n)
    for _ in range(int(p)):
        result = kernels.max_mul(am.data, result)
    return MaxMatrix(result)


def _star_raw(data: np.ndarray) -> np.ndarray:
    """max(I, data, data^2, ..., data^(n-1)) without the cycle-mean guard."""
    n = data.shape[0]
    star = np.eye(n)
    power = np.eye(n)
    for _ in range(n - 1):
        power = kernels.max_mul(power, data)
        np.maximum(star, power, out=star)
    return star


def kleene_star(b, tol: float | None = None) -> MaxMatrix:
    """Sum of the powers 0..n-1, finite star when the cycle mean is <= 1.

    Raises :class:`DivergenceError` when the maximal cycle geometric mean
    exceeds 1 beyond the tolerance slack (normalized matrices computed in
    floating point land slightly above 1 and are admitted).
    """
    from .spectral import cycle_mean  # deferred: spectral builds on this module

    bm = as_max_matrix(b)
    t = resolve_tolerance(tol)
    mu = cycle_mean(bm, tol=t).mu
    if not leq(mu, 1.0, t):
        raise DivergenceError(f"kleene star diverges: cycle mean {mu} exceeds 1")
    return MaxMatrix(_star_raw(bm.data))


def apply(a, x) -> MaxVector:
    """Matrix action (a (x) x)[i] = max_j a[i, j] * x[j]."""
    am = as_max_matrix(a)
    xv = as_max_vector(x)
    if am.n != xv.n:
        raise DimensionMismatchError(f"dimension mismatch: {am.n} vs {xv.n}")
    return MaxVector((am.data * xv.data[None, :]).max(axis=1))


def left_apply(v, a) -> MaxVector:
    """Row action (v^T (x) a)[j] = max_i v[i] * a[i, j]."""
    am = as_max_matrix(a)
    vv = as_max_vector(v)
    if am.n != vv.n:
        raise DimensionMismatchError(f"dimension mismatch: {vv.n} vs {am.n}")
    return MaxVector((vv.data[:, None] * am.data).max(axis=0))


@dataclass(frozen=True)
class MaxPermutation:
    """Generalized permutation matrix: one positive entry per row and column.

    Row i carries ``weights[i]`` in column ``sigma[i]``.  These are exactly
    the max-invertible matrices.
    """

    sigma: tuple[int, ...]
    weights: MaxVector

    def __post_init__(self):
        n = len(self.sigma)
        if sorted(self.sigma) != list(range(n)):
            raise InvalidEntryError(f"sigma is not a permutation of 0..{n - 1}")
        w = as_max_vector(self.weights)
        object.__setattr__(self, "weights", w)
        if w.n != n:
            raise DimensionMismatchError(f"dimension mismatch: {n} vs {w.n}")
        if not w.is_positive():
            raise InvalidEntryError("permutation weights must be strictly positive")

    @property
    def n(self) -> int:
        return len(self.sigma)

    def to_matrix(self) -> MaxMatrix:
        m = np.zeros((self.n, self.n))
        m[np.arange(self.n), list(self.sigma)] = self.weights.data
        return MaxMatrix(m)


def perm_inverse(p: MaxPermutation) -> MaxPermutation:
    """Max-algebraic inverse; satisfies p (x) inverse(p) = identity."""
    n = p.n
    inv_sigma = [0] * n
    for i, s in enumerate(p.sigma):
        inv_sigma[s] = i
    inv_weights = 1.0 / p.weights.data[inv_sigma]
    return MaxPermutation(tuple(inv_sigma), MaxVector(inv_weights))


def perm_conjugate(p: MaxPermutation, a) -> MaxMatrix:
    """Similarity p (x) a (x) inverse(p); entry (i, j) is
    (w[i] / w[j]) * a[sigma(i), sigma(j)]."""
    am = as_max_matrix(a)
    if p.n != am.n:
        raise DimensionMismatchError(f"dimension mismatch: {p.n} vs {am.n}")
    sig = np.asarray(p.sigma, dtype=np.intp)
    w = p.weights.data
    core = am.data[np.ix_(sig, sig)]
    return MaxMatrix((w[:, None] / w[None, :]) * core)
