"""Pure numpy implementations of the hot kernels.

These are the fallback used when the compiled extension is unavailable.  The
two backends must agree bitwise: every kernel forms exactly the same float
products/sums and breaks argmax ties toward the smallest index.
"""

from __future__ import annotations

import numpy as np


def max_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Max-times matrix product: out[i, j] = max_k a[i, k] * b[k, j]."""
    return np.max(a[:, :, None] * b[None, :, :], axis=1)


def karp_table(w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Dynamic-programming table of maximum-weight walks from node 0.

    ``w`` holds log-domain edge weights with -inf marking absent edges.
    Returns ``(d, parent)`` where ``d[k, v]`` is the best weight of a walk of
    exactly ``k`` edges from node 0 to ``v`` (-inf if none) and ``parent[k, v]``
    is the predecessor attaining it (first maximiser).
    """
    n = w.shape[0]
    d = np.full((n + 1, n), -np.inf)
    d[0, 0] = 0.0
    parent = np.zeros((n + 1, n), dtype=np.int64)
    for k in range(1, n + 1):
        step = d[k - 1][:, None] + w
        d[k] = step.max(axis=0)
        parent[k] = step.argmax(axis=0)
    return d, parent
