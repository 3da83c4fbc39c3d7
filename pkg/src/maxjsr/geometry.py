"""Tropical convexity primitives and set-distance diagnostics.

Membership in a max cone or max-convex hull is decided by residuation: the
largest admissible coefficient for each generator is the minimum of the
coordinatewise quotients, and the target lies in the hull exactly when the
scaled generators recombine to it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSpectrumError, DimensionMismatchError, IrreducibilityError
from .jsr import MatrixSet, WeightedMaxNorm, aggregate
from .maxcore import MaxMatrix, MaxVector
from .spectral import cycle_mean, frobenius_form, is_irreducible
from .tolerance import close, resolve_tolerance


@dataclass(frozen=True)
class MembershipCertificate:
    """Certificate for hull membership; self-verifying when ``inside``.

    When ``inside`` holds, recombining the generators with ``coefficients``
    reproduces the target (and in conv mode the maximal coefficient is one).
    """

    inside: bool
    coefficients: tuple[float, ...] | None
    mode: str  # "span" or "conv"


@dataclass(frozen=True)
class HausdorffReport:
    """Hausdorff distance with the member realizing it."""

    distance: float
    argmax_side: str  # "left" or "right"
    argmax_member: str


@dataclass(frozen=True)
class EccentricityValue:
    """Ratio of a norm's extremes on the sup-norm unit sphere (>= 1)."""

    value: float


@dataclass(frozen=True)
class DominanceResult:
    """Outcome of the strict-dominance test with the scaling headroom."""

    dominated: bool
    scale: float | None  # the factor by which the dominated aggregate can grow
    ratio: float

    def __bool__(self) -> bool:
        return self.dominated


def _flatten(value) -> np.ndarray:
    if isinstance(value, MaxMatrix):
        return value.data.ravel()
    if isinstance(value, MaxVector):
        return value.data
    return np.asarray(value, dtype=np.float64).ravel()


def hull_membership(x, generators, mode: str = "conv", tol: float | None = None) -> MembershipCertificate:
    """Decide membership of ``x`` in the max cone or max-convex hull.

    For each generator the residuated coefficient is the minimum of x over
    the generator on its support (infinite for an all-zero generator, which
    contributes nothing and is capped at one).  Conv mode additionally clamps
    all coefficients at one and requires the maximum to reach one.
    """
    if mode not in ("span", "conv"):
        raise ValueError(f"mode must be 'span' or 'conv', got {mode!r}")
    t = resolve_tolerance(tol)
    target = _flatten(x)
    gens = [_flatten(g) for g in generators]
    if not gens:
        raise DimensionMismatchError("at least one generator is required")
    for g in gens:
        if g.shape != target.shape:
            raise DimensionMismatchError("generators must have the shape of the target")

    coeffs = []
    for g in gens:
        support = g > 0
        if not support.any():
            coeffs.append(math.inf)
            continue
        coeffs.append(float((target[support] / g[support]).min()))

    if mode == "conv":
        coeffs = [min(c, 1.0) for c in coeffs]
    else:
        coeffs = [min(c, 1.0) if math.isinf(c) else c for c in coeffs]

    combo = np.zeros_like(target)
    for c, g in zip(coeffs, gens):
        np.maximum(combo, c * g, out=combo)

    bound = t * np.maximum(1.0, np.maximum(np.abs(combo), np.abs(target)))
    inside = bool((np.abs(combo - target) <= bound).all())
    if mode == "conv":
        inside = inside and close(max(coeffs), 1.0, t)
    return MembershipCertificate(inside=inside, coefficients=tuple(coeffs) if inside else None, mode=mode)


def _member_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Matrix norm induced by the sup vector norm: max absolute row sum."""
    return float(np.abs(a - b).sum(axis=1).max())


def hausdorff(psi: MatrixSet, phi: MatrixSet) -> HausdorffReport:
    """Hausdorff distance between two sets in the row-sum matrix norm."""
    if psi.n != phi.n:
        raise DimensionMismatchError(f"dimension mismatch: {psi.n} vs {phi.n}")
    best = -1.0
    side = "left"
    member = psi.names[0]
    for from_side, src, dst in (("left", psi, phi), ("right", phi, psi)):
        for name, mat in src:
            d = min(_member_distance(mat.data, other.data) for _, other in dst)
            if d > best:
                best, side, member = d, from_side, name
    return HausdorffReport(distance=best, argmax_side=side, argmax_member=member)


def eccentricity(nu: WeightedMaxNorm) -> EccentricityValue:
    """Extreme ratio of a weighted max norm against the sup norm.

    The maximum over the unit sphere is the largest weight (attained at the
    all-ones vector), the minimum the smallest weight (attained at the
    corresponding coordinate vector).
    """
    w = nu.weights.data
    return EccentricityValue(value=float(w.max() / w.min()))


def strict_dominance(psi1: MatrixSet, psi2: MatrixSet, tol: float | None = None) -> DominanceResult:
    """Sufficient test for a strict gap between the two radii.

    Computes the largest entrywise quotient r of the aggregates on the
    support of the first.  When r < 1 the first aggregate fits inside the
    second with headroom 1/r > 1, which forces the first radius strictly
    below the second (the second aggregate must be irreducible with positive
    radius).
    """
    t = resolve_tolerance(tol)
    if psi1.n != psi2.n:
        raise DimensionMismatchError(f"dimension mismatch: {psi1.n} vs {psi2.n}")
    s1 = aggregate(psi1).data
    s2m = aggregate(psi2)
    if not is_irreducible(s2m):
        raise IrreducibilityError(
            "the dominating set must have an irreducible aggregate",
            form=frobenius_form(s2m, tol=t),
        )
    if cycle_mean(s2m, tol=t).mu <= 0.0:
        raise DegenerateSpectrumError("the dominating set must have positive radius")

    support = s1 > 0
    if not support.any():
        return DominanceResult(dominated=True, scale=math.inf, ratio=0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        quotients = np.where(support, s1 / s2m.data, 0.0)
    r = float(quotients.max())
    if r < 1.0:
        return DominanceResult(dominated=True, scale=1.0 / r, ratio=r)
    return DominanceResult(dominated=False, scale=None, ratio=r)
