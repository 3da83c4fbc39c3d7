"""Brute-force reference implementations and random instance generation.

Everything here is deliberately naive: exhaustive cycle enumeration and full
product enumeration, guarded by hard caps.  The oracles exist to validate the
fast paths, so they refuse inputs beyond their guards rather than sample.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BudgetError, GenerationError
from .jsr import MatrixSet, iter_products
from .maxcore import MaxMatrix, as_max_matrix
from .spectral import CycleMeanResult, _canonical_rotation, is_irreducible
from .tolerance import close, resolve_tolerance

CYCLE_ENUMERATION_DIMENSION_CAP = 9
PRODUCT_BUDGET = 10**6
_GENERATION_RETRIES = 200


def enumerate_cycles(a) -> list[tuple[tuple[int, ...], float]]:
    """All elementary cycles with their geometric means, each listed once.

    Cycles are rooted at their smallest node; a DFS over strictly larger
    nodes visits each exactly once and carries the running edge product.
    """
    am = as_max_matrix(a)
    n = am.n
    if n > CYCLE_ENUMERATION_DIMENSION_CAP:
        raise BudgetError(
            f"cycle enumeration capped at n <= {CYCLE_ENUMERATION_DIMENSION_CAP}, got {n}"
        )
    data = am.data
    succ = [np.flatnonzero(data[i] > 0).tolist() for i in range(n)]

    out: list[tuple[tuple[int, ...], float]] = []
    for s in range(n):
        path = [s]
        prods = [1.0]
        on_path = {s}
        iters = [iter(succ[s])]
        while iters:
            advanced = None
            for w in iters[-1]:
                if w == s:
                    prod = prods[-1] * data[path[-1], s]
                    out.append((tuple(path), prod ** (1.0 / len(path))))
                elif w > s and w not in on_path:
                    advanced = w
                    break
            if advanced is None:
                on_path.discard(path.pop())
                prods.pop()
                iters.pop()
            else:
                prods.append(prods[-1] * data[path[-1], advanced])
                path.append(advanced)
                on_path.add(advanced)
                iters.append(iter(succ[advanced]))
    return out


def bf_cycle_mean(a, tol: float | None = None) -> CycleMeanResult:
    """Exhaustive maximal cycle geometric mean (n <= 9).

    Enumerates every elementary cycle, so the returned mean, witness and
    criticality count are exact up to scalar rounding.
    """
    am = as_max_matrix(a)
    t = resolve_tolerance(tol)
    cycles = enumerate_cycles(am)
    if not cycles:
        return CycleMeanResult(0.0, (), matrix=am, tol=t, unique_critical=False)

    best_cycle, best_mean = cycles[0]
    for cyc, mean in cycles[1:]:
        if mean > best_mean:
            best_cycle, best_mean = cyc, mean
    attaining = sum(1 for _, mean in cycles if close(mean, best_mean, t))
    return CycleMeanResult(
        best_mean,
        _canonical_rotation(list(best_cycle)),
        matrix=am,
        tol=t,
        unique_critical=attaining == 1,
    )


def bf_gsr_truncation(psi: MatrixSet, m: int, budget: int = PRODUCT_BUDGET) -> tuple[float, float]:
    """Depth-m truncations bracketing the joint spectral radius.

    Returns ``(lower, upper)`` where lower is the largest m-th root of a
    product's cycle mean and upper the largest m-th root of a product's
    row-sum norm, over every product of length m.
    """
    if m < 1:
        raise ValueError(f"depth must be positive, got {m}")
    best_mu = 0.0
    best_norm = 0.0
    for _, prod in iter_products(psi, m, budget=budget):
        best_mu = max(best_mu, bf_cycle_mean(prod).mu)
        best_norm = max(best_norm, float(np.abs(prod).sum(axis=1).max()))
    return best_mu ** (1.0 / m), best_norm ** (1.0 / m)


@dataclass(frozen=True)
class InstanceSpec:
    """Recipe for a reproducible random matrix set."""

    n: int
    set_size: int = 1
    density: float = 1.0
    entry_range: tuple[float, float] = (0.1, 10.0)
    seed: int = 0
    require_irreducible: bool = False

    def __post_init__(self):
        if not (0.0 < self.density <= 1.0):
            raise ValueError(f"density must lie in (0, 1], got {self.density}")
        low, high = self.entry_range
        if not (0.0 < low <= high):
            raise ValueError(f"entry range must satisfy 0 < low <= high, got {self.entry_range}")
        if self.n < 1 or self.set_size < 1:
            raise ValueError("dimension and set size must be positive")


def generate(spec: InstanceSpec) -> MatrixSet:
    """Draw a matrix set with log-uniform positive entries, deterministically.

    With ``require_irreducible`` the draw is rejected until the entrywise
    maximum of the members is irreducible; a bounded number of retries guards
    against hopeless specs (for example tiny densities).
    """
    rng = np.random.default_rng(spec.seed)
    low, high = spec.entry_range
    log_low, log_high = np.log(low), np.log(high)

    for _ in range(_GENERATION_RETRIES):
        members = []
        for k in range(spec.set_size):
            entries = np.exp(rng.uniform(log_low, log_high, size=(spec.n, spec.n)))
            mask = rng.random((spec.n, spec.n)) < spec.density
            members.append((f"A{k + 1}", MaxMatrix(np.where(mask, entries, 0.0))))
        candidate = MatrixSet(members)
        if not spec.require_irreducible:
            return candidate
        agg = np.zeros((spec.n, spec.n))
        for _, mat in candidate:
            np.maximum(agg, mat.data, out=agg)
        if is_irreducible(agg):
            return candidate
    raise GenerationError(
        f"no irreducible instance found in {_GENERATION_RETRIES} draws for {spec}"
    )
