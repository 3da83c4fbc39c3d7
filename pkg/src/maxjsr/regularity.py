"""Empirical continuity probes for the cycle mean and the joint radius.

The probes are statistical, not proofs: they sample perturbation pairs at a
fixed radius and report the largest observed difference quotient at a chosen
exponent.  A finite, seed-stable maximum is the success signal for genuine
Lipschitz (exponent 1) or Hoelder (exponent 1/n) behavior.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, IrreducibilityError
from .geometry import EccentricityValue, eccentricity, hausdorff
from .jsr import MatrixSet, barabanov_norm, jsr
from .maxcore import MaxMatrix, as_max_matrix
from .spectral import cycle_mean, is_irreducible
from .tolerance import resolve_tolerance

DEFAULT_PAIRS = 2048


@dataclass(frozen=True)
class RegularityProbe:
    """Largest observed Hoelder quotient over sampled perturbation pairs.

    ``clamped`` counts perturbed samples that hit the nonnegativity clamp,
    ``skipped`` the pairs discarded for zero distance.
    """

    pairs: int
    max_ratio: float
    alpha: float
    radius: float
    center: object
    clamped: int
    skipped: int
    seed: int


def _perturbed(base: np.ndarray, radius: float, rng) -> tuple[np.ndarray, bool]:
    out = base + rng.uniform(-radius, radius, size=base.shape)
    hit = bool((out < 0).any())
    if hit:
        np.maximum(out, 0.0, out=out)
    return out, hit


def probe_matrix_regularity(
    a,
    radius: float,
    pairs: int = DEFAULT_PAIRS,
    alpha: float = 1.0,
    seed: int = 0,
    tol: float | None = None,
) -> RegularityProbe:
    """Difference quotients of the cycle mean around one matrix.

    Pairs are drawn uniformly from the entrywise ball of the given radius
    (clamped into the nonnegative cone); the distance is the largest absolute
    entry difference.
    """
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius}")
    am = as_max_matrix(a)
    t = resolve_tolerance(tol)
    rng = np.random.default_rng(seed)

    clamped = 0
    skipped = 0
    best = 0.0
    for _ in range(pairs):
        x, hit_x = _perturbed(am.data, radius, rng)
        y, hit_y = _perturbed(am.data, radius, rng)
        clamped += int(hit_x) + int(hit_y)
        dist = float(np.abs(x - y).max())
        if dist == 0.0:
            skipped += 1
            continue
        gap = abs(cycle_mean(x, tol=t).mu - cycle_mean(y, tol=t).mu)
        best = max(best, gap / dist**alpha)
    return RegularityProbe(
        pairs=pairs,
        max_ratio=best,
        alpha=alpha,
        radius=radius,
        center=am,
        clamped=clamped,
        skipped=skipped,
        seed=seed,
    )


def probe_set_regularity(
    psi: MatrixSet,
    radius: float,
    pairs: int = DEFAULT_PAIRS,
    alpha: float = 1.0,
    seed: int = 0,
    tol: float | None = None,
) -> RegularityProbe:
    """Difference quotients of the joint radius around one set.

    Each sample perturbs every member entrywise within the radius; distances
    are Hausdorff distances between the perturbed sets.
    """
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius}")
    t = resolve_tolerance(tol)
    rng = np.random.default_rng(seed)
    names = psi.names

    def draw():
        hit_any = False
        mats = []
        for _, mat in psi:
            arr, hit = _perturbed(mat.data, radius, rng)
            hit_any = hit_any or hit
            mats.append(MaxMatrix(arr))
        return MatrixSet(list(zip(names, mats))), hit_any

    clamped = 0
    skipped = 0
    best = 0.0
    for _ in range(pairs):
        left, hit_l = draw()
        right, hit_r = draw()
        clamped += int(hit_l) + int(hit_r)
        dist = hausdorff(left, right).distance
        if dist == 0.0:
            skipped += 1
            continue
        gap = abs(jsr(left, tol=t) - jsr(right, tol=t))
        best = max(best, gap / dist**alpha)
    return RegularityProbe(
        pairs=pairs,
        max_ratio=best,
        alpha=alpha,
        radius=radius,
        center=psi,
        clamped=clamped,
        skipped=skipped,
        seed=seed,
    )


def eccentricity_along_sequence(
    psi: MatrixSet,
    target: MatrixSet,
    steps: int,
    tol: float | None = None,
) -> list[EccentricityValue]:
    """Eccentricities of the constructed norms along a linear set path.

    Members are paired by position and interpolated entrywise; every
    interpolated set must have an irreducible aggregate (the failing step
    index is reported otherwise).  Bounded values along the path are the
    success signal; the eccentricity blows up as the path nears a set whose
    aggregate loses irreducibility.
    """
    if len(psi) != len(target) or psi.n != target.n:
        raise DimensionMismatchError(
            "interpolation requires equal member counts and dimensions"
        )
    if steps < 2:
        raise ValueError(f"need at least two steps, got {steps}")
    t = resolve_tolerance(tol)

    values = []
    for idx, frac in enumerate(np.linspace(0.0, 1.0, steps)):
        members = [
            (name, MaxMatrix((1.0 - frac) * a.data + frac * b.data))
            for (name, a), (_, b) in zip(psi, target)
        ]
        current = MatrixSet(members)
        agg = np.zeros((psi.n, psi.n))
        for _, mat in current:
            np.maximum(agg, mat.data, out=agg)
        if not is_irreducible(agg):
            raise IrreducibilityError(
                f"interpolant at step {idx} has a reducible aggregate", step=idx
            )
        values.append(eccentricity(barabanov_norm(current, tol=t)))
    return values
