"""Spectral quantities of a single nonnegative matrix.

The maximal cycle geometric mean is computed by a Karp-style dynamic program
on log-transformed weights (zero entries map to -inf), run per strongly
connected component; a witnessing cycle is recovered from the DP parents and
its geometric mean is re-evaluated in the original domain, so the reported
value carries only the rounding of one short product.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    DegenerateSpectrumError,
    IrreducibilityError,
    NonUniqueCriticalError,
)
from .maxcore import MaxMatrix, MaxVector, _star_raw, as_max_matrix
from .tolerance import close, resolve_tolerance

# Uniqueness of the critical cycle is decided by enumeration, which is only
# affordable up to this dimension; above it the flag is reported as unknown.
UNIQUENESS_DIMENSION_CAP = 12
_UNIQUENESS_CYCLE_CAP = 200_000


def _successors(data: np.ndarray) -> list[list[int]]:
    n = data.shape[0]
    return [np.flatnonzero(data[i] > 0).tolist() for i in range(n)]


def strongly_connected_components(succ: list[list[int]]) -> list[list[int]]:
    """Tarjan's algorithm, iterative.

    Components are emitted in reverse topological order of the condensation
    (a component appears before every component that can reach it), with the
    nodes of each component sorted ascending.
    """
    n = len(succ)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    components: list[list[int]] = []
    counter = 0

    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, ptr = work[-1]
            if ptr == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            descended = False
            for k in range(ptr, len(succ[v])):
                w = succ[v][k]
                if index[w] == -1:
                    work[-1] = (v, k + 1)
                    work.append((w, 0))
                    descended = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if descended:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comp.sort()
                components.append(comp)
    return components


def _canonical_rotation(cycle: list[int]) -> tuple[int, ...]:
    if not cycle:
        return ()
    k = cycle.index(min(cycle))
    return tuple(cycle[k:] + cycle[:k])


def _cycle_geometric_mean(data: np.ndarray, cycle) -> float:
    prod = 1.0
    k = len(cycle)
    for t in range(k):
        prod *= data[cycle[t], cycle[(t + 1) % k]]
    return prod ** (1.0 / k)


def _component_best_cycle(data: np.ndarray, comp: list[int]) -> tuple[float, list[int]] | None:
    """Best cycle inside one SCC: Karp DP plus parent-pointer traceback."""
    if len(comp) == 1:
        i = comp[0]
        if data[i, i] > 0:
            return float(data[i, i]), [i]
        return None

    sub = data[np.ix_(comp, comp)]
    m = len(comp)
    with np.errstate(divide="ignore"):
        w = np.log(sub)
    d, parent = kernels.karp_table(w)

    final = d[m]
    cols = np.flatnonzero(np.isfinite(final))
    # Within an SCC every node is reachable in < m steps and walks extend
    # forever, so at least one column of d[m] is finite.
    diffs = final[cols][None, :] - d[:m, cols]
    denom = (m - np.arange(m, dtype=np.float64))[:, None]
    per_node = (diffs / denom).min(axis=0)
    vstar = int(cols[int(np.argmax(per_node))])

    walk = [vstar]
    cur = vstar
    for step in range(m, 0, -1):
        cur = int(parent[step, cur])
        walk.append(cur)
    walk.reverse()  # walk[0] = source, walk[m] = vstar

    seen: dict[int, int] = {}
    cycle_local: list[int] | None = None
    for i in range(m, -1, -1):
        u = walk[i]
        if u in seen:
            cycle_local = walk[i : seen[u]]
            break
        seen[u] = i
    assert cycle_local is not None  # a length-m walk on m nodes must repeat

    cycle = [comp[u] for u in cycle_local]
    return _cycle_geometric_mean(data, cycle), cycle


def _restricted_simple_cycles(succ: list[list[int]], cap: int):
    """Yield every elementary cycle of the digraph exactly once.

    Cycles are emitted with their smallest node first.  DFS from each start
    node over strictly larger nodes; fine for the small graphs this sees.
    """
    n = len(succ)
    emitted = 0
    for s in range(n):
        path = [s]
        on_path = {s}
        iters = [iter(succ[s])]
        while iters:
            found = None
            for w in iters[-1]:
                if w == s:
                    emitted += 1
                    if emitted > cap:
                        raise OverflowError("cycle cap exceeded")
                    yield list(path)
                elif w > s and w not in on_path:
                    found = w
                    break
            if found is None:
                on_path.discard(path.pop())
                iters.pop()
            else:
                path.append(found)
                on_path.add(found)
                iters.append(iter(succ[found]))


def _attaining_cycles(data: np.ndarray, mu: float, tol: float, need: int):
    """Up to ``need`` distinct elementary cycles whose mean attains ``mu``.

    Candidate edges are those lying on a cycle of normalized product within
    a slack of 1 (checked against the Kleene star of data/mu); every cycle of
    the candidate subgraph is then filtered by its true geometric mean.
    """
    n = data.shape[0]
    scaled = data / mu
    star = _star_raw(scaled)
    slack = 8.0 * n * tol
    candidate = (scaled > 0) & (scaled * star.T >= 1.0 - slack)
    succ = [np.flatnonzero(candidate[i]).tolist() for i in range(n)]

    found: list[tuple[int, ...]] = []
    for cycle in _restricted_simple_cycles(succ, _UNIQUENESS_CYCLE_CAP):
        if close(_cycle_geometric_mean(data, cycle), mu, tol):
            found.append(_canonical_rotation(cycle))
            if len(found) >= need:
                break
    return found


class CycleMeanResult:
    """Maximal cycle geometric mean together with one witnessing cycle.

    ``mu`` is zero exactly when the positive-entry digraph is acyclic, in
    which case the witness is empty.  ``unique_critical`` reports whether
    exactly one cycle attains ``mu`` (up to rotation, within tolerance); it
    is evaluated lazily by enumeration and is ``None`` (unknown) beyond
    dimension ``UNIQUENESS_DIMENSION_CAP``.
    """

    __slots__ = ("mu", "witness_cycle", "_matrix", "_tol", "_unique")

    _UNSET = object()

    def __init__(self, mu, witness_cycle, matrix=None, tol=None, unique_critical=_UNSET):
        self.mu = float(mu)
        self.witness_cycle = tuple(witness_cycle)
        self._matrix = matrix
        self._tol = tol
        self._unique = unique_critical

    @property
    def unique_critical(self):
        if self._unique is CycleMeanResult._UNSET:
            self._unique = self._decide_uniqueness()
        return self._unique

    def _decide_uniqueness(self):
        if self.mu == 0.0:
            return False
        if self._matrix is None or self._matrix.n > UNIQUENESS_DIMENSION_CAP:
            return None
        try:
            found = _attaining_cycles(self._matrix.data, self.mu, self._tol, need=2)
        except OverflowError:
            return None
        return len(found) == 1

    def __repr__(self) -> str:
        return f"CycleMeanResult(mu={self.mu!r}, witness_cycle={self.witness_cycle!r})"


def cycle_mean(a, tol: float | None = None) -> CycleMeanResult:
    """Maximal geometric mean over the elementary cycles of the digraph.

    Runs Karp's algorithm per strongly connected component and recovers a
    witnessing cycle by backtracking the DP parents.
    """
    am = as_max_matrix(a)
    t = resolve_tolerance(tol)
    data = am.data
    succ = _successors(data)

    best_mu = 0.0
    best_cycle: list[int] = []
    for comp in strongly_connected_components(succ):
        got = _component_best_cycle(data, comp)
        if got is not None and got[0] > best_mu:
            best_mu, best_cycle = got

    return CycleMeanResult(best_mu, _canonical_rotation(best_cycle), matrix=am, tol=t)


def is_irreducible(a) -> bool:
    """True when the positive-entry digraph is strongly connected.

    A 1x1 matrix counts as irreducible regardless of its entry.
    """
    am = as_max_matrix(a)
    return len(strongly_connected_components(_successors(am.data))) == 1


@dataclass(frozen=True)
class EigenPair:
    """Eigenvalue/eigenvector pair, vector normalized to max entry 1."""

    value: float
    vector: MaxVector
    side: str  # "right" or "left"


@dataclass(frozen=True)
class FrobeniusForm:
    """Communicating-class decomposition of a square matrix.

    ``classes`` lists the strongly connected components of the positive
    digraph in reverse topological order, so reindexing the matrix by
    ``permutation`` (the concatenation of the classes) makes it block lower
    triangular.  ``access[i, j]`` says class i can reach class j (reflexive).
    """

    permutation: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]
    block_mus: tuple[float, ...]
    access: np.ndarray

    @property
    def class_count(self) -> int:
        return len(self.classes)

    def reordered(self, a) -> MaxMatrix:
        am = as_max_matrix(a)
        perm = np.asarray(self.permutation, dtype=np.intp)
        return MaxMatrix(am.data[np.ix_(perm, perm)])


def frobenius_form(a, tol: float | None = None) -> FrobeniusForm:
    """Strongly-connected-class structure with per-class cycle means."""
    am = as_max_matrix(a)
    t = resolve_tolerance(tol)
    data = am.data
    comps = strongly_connected_components(_successors(data))
    p = len(comps)

    class_of = {}
    for ci, comp in enumerate(comps):
        for node in comp:
            class_of[node] = ci

    block_mus = []
    for comp in comps:
        if len(comp) == 1:
            i = comp[0]
            block_mus.append(float(data[i, i]))
        else:
            block_mus.append(cycle_mean(data[np.ix_(comp, comp)], tol=t).mu)

    adjacency = np.eye(p, dtype=bool)
    rows, cols = np.nonzero(data > 0)
    for u, w in zip(rows.tolist(), cols.tolist()):
        adjacency[class_of[u], class_of[w]] = True
    access = adjacency.copy()
    for k in range(p):  # boolean transitive closure
        access |= access[:, k : k + 1] & access[k : k + 1, :]

    permutation = tuple(node for comp in comps for node in comp)
    return FrobeniusForm(
        permutation=permutation,
        classes=tuple(tuple(c) for c in comps),
        block_mus=tuple(block_mus),
        access=access,
    )


def _critical_nodes(data: np.ndarray, mu: float, tol: float) -> list[int]:
    """Nodes lying on a cycle attaining ``mu`` (star-based test)."""
    scaled = data / mu
    star = _star_raw(scaled)
    plus = kernels.max_mul(scaled, star)
    diag = np.diagonal(plus)
    crit = [g for g in range(data.shape[0]) if close(diag[g], 1.0, tol)]
    if not crit:  # floating-point safety net: take the closest node
        crit = [int(np.argmax(diag))]
    return crit


def principal_eigenpair(a, side: str = "right", tol: float | None = None) -> EigenPair:
    """Principal eigenpair of an irreducible matrix.

    The vector is the column of the Kleene star of ``a / mu`` at the smallest
    critical node (rows of the transposed star for the left side), normalized
    to maximum entry 1; it is strictly positive for irreducible input.
    """
    if side not in ("right", "left"):
        raise ValueError(f"side must be 'right' or 'left', got {side!r}")
    am = as_max_matrix(a)
    t = resolve_tolerance(tol)

    work = am.data.T.copy() if side == "left" else am.data
    comps = strongly_connected_components(_successors(work))
    if len(comps) > 1:
        raise IrreducibilityError(
            f"matrix is reducible ({len(comps)} communicating classes)",
            form=frobenius_form(am, tol=t),
        )
    mu = cycle_mean(work, tol=t).mu
    if mu <= 0.0:
        raise DegenerateSpectrumError("cycle mean is zero, no principal eigenpair")

    star = _star_raw(work / mu)
    g = min(_critical_nodes(work, mu, t))
    v = star[:, g].copy()
    v /= v.max()
    return EigenPair(value=mu, vector=MaxVector(v), side=side)


def mu_gradient(a, tol: float | None = None) -> np.ndarray:
    """Gradient of the cycle mean at a matrix with a unique critical cycle.

    Entry (p, q) is mu / (k * a[p, q]) on the k edges of the critical cycle
    and zero elsewhere.
    """
    am = as_max_matrix(a)
    t = resolve_tolerance(tol)
    res = cycle_mean(am, tol=t)
    if res.mu <= 0.0:
        raise DegenerateSpectrumError("cycle mean is zero, gradient undefined")
    unique = res.unique_critical
    if unique is None:
        raise NonUniqueCriticalError(
            f"uniqueness undecided beyond dimension {UNIQUENESS_DIMENSION_CAP}"
        )
    if not unique:
        raise NonUniqueCriticalError("several cycles attain the maximum, not differentiable")

    cycle = res.witness_cycle
    k = len(cycle)
    grad = np.zeros_like(am.data)
    for idx in range(k):
        p, q = cycle[idx], cycle[(idx + 1) % k]
        grad[p, q] = res.mu / (k * am.data[p, q])
    return grad
