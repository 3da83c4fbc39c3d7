"""Runtime property battery behind the ``check`` command.

Each check exercises one of the library's structural identities on the given
set plus freshly generated random instances.  Checks that need hypotheses the
input does not satisfy (irreducibility, positive radius, small dimension)
report ``skip`` rather than guessing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import eccentricity, hausdorff, hull_membership, strict_dominance
from .jsr import (
    MatrixSet,
    aggregate,
    barabanov_norm,
    barabanov_nonexistence,
    conv_invariance_check,
    finiteness_product,
    induced_norm,
    jsr,
    verify_barabanov,
    verify_extremal,
)
from .maxcore import MaxMatrix, MaxPermutation, MaxVector, max_add, max_mul, max_power, perm_conjugate
from .oracles import InstanceSpec, bf_cycle_mean, bf_gsr_truncation, generate
from .spectral import cycle_mean, is_irreducible
from .tolerance import close, leq, resolve_tolerance


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # "pass" | "fail" | "skip"
    detail: str = ""


def _random_like(psi: MatrixSet, rng) -> MaxMatrix:
    return MaxMatrix(rng.random((psi.n, psi.n)) * 2.0)


def _check_semiring_laws(psi: MatrixSet, rng, tol: float) -> CheckResult:
    for _ in range(16):
        a, b, c = (_random_like(psi, rng) for _ in range(3))
        left = max_mul(max_mul(a, b), c).data
        right = max_mul(a, max_mul(b, c)).data
        if not np.allclose(left, right, rtol=1e-12, atol=0.0):
            return CheckResult("semiring_laws", "fail", "associativity broke")
        dist_l = max_mul(a, max_add(b, c)).data
        dist_r = max_add(max_mul(a, b), max_mul(a, c)).data
        if not np.allclose(dist_l, dist_r, rtol=1e-12, atol=0.0):
            return CheckResult("semiring_laws", "fail", "distributivity broke")
        small = MaxMatrix(np.minimum(a.data, b.data))
        if not (max_mul(small, c).data <= max_mul(MaxMatrix(np.maximum(a.data, b.data)), c).data + 1e-15).all():
            return CheckResult("semiring_laws", "fail", "monotonicity broke")
    return CheckResult("semiring_laws", "pass")


def _check_spectral_identities(psi: MatrixSet, rng, tol: float) -> CheckResult:
    for _, mat in psi:
        if cycle_mean(mat, tol=tol).mu != cycle_mean(mat.transpose(), tol=tol).mu:
            return CheckResult("spectral_identities", "fail", "transpose changed the cycle mean")
        mu = cycle_mean(mat, tol=tol).mu
        for k in (2, 3, 4):
            if not close(cycle_mean(max_power(mat, k), tol=tol).mu, mu**k, tol):
                return CheckResult("spectral_identities", "fail", f"power law broke at k={k}")
    return CheckResult("spectral_identities", "pass")


def _check_oracle_agreement(psi: MatrixSet, rng, tol: float) -> CheckResult:
    if psi.n > 7:
        return CheckResult("oracle_agreement", "skip", "dimension above the oracle cap")
    for name, mat in psi:
        fast = cycle_mean(mat, tol=tol).mu
        slow = bf_cycle_mean(mat, tol=tol).mu
        if abs(fast - slow) > 1e-12 * max(1.0, fast, slow):
            return CheckResult("oracle_agreement", "fail", f"member {name!r}: {fast} vs {slow}")
    return CheckResult("oracle_agreement", "pass")


def _check_sandwich(psi: MatrixSet, rng, tol: float) -> CheckResult:
    if psi.n > 4 or len(psi) > 3:
        return CheckResult("sandwich", "skip", "instance too large for enumeration")
    radius = jsr(psi, tol=tol)
    for m in (1, 2, 3):
        lower, upper = bf_gsr_truncation(psi, m)
        if not (leq(lower, radius, tol) and leq(radius, upper, tol)):
            return CheckResult("sandwich", "fail", f"bracket broke at depth {m}")
    return CheckResult("sandwich", "pass")


def _check_similarity(psi: MatrixSet, rng, tol: float) -> CheckResult:
    base = jsr(psi, tol=tol)
    for _ in range(4):
        sigma = tuple(rng.permutation(psi.n).tolist())
        weights = MaxVector(np.exp(rng.uniform(-1.0, 1.0, psi.n)))
        perm = MaxPermutation(sigma, weights)
        conjugated = MatrixSet([(name, perm_conjugate(perm, mat)) for name, mat in psi])
        if not close(jsr(conjugated, tol=tol), base, tol):
            return CheckResult("similarity", "fail", "conjugation moved the radius")
    return CheckResult("similarity", "pass")


def _check_homogeneity(psi: MatrixSet, rng, tol: float) -> CheckResult:
    base = jsr(psi, tol=tol)
    for scale in (0.25, 3.0):
        scaled = MatrixSet([(name, MaxMatrix(scale * mat.data)) for name, mat in psi])
        if not close(jsr(scaled, tol=tol), scale * base, tol):
            return CheckResult("homogeneity", "fail", f"scaling by {scale} broke")
    return CheckResult("homogeneity", "pass")


def _check_norm_characterization(psi: MatrixSet, rng, tol: float) -> CheckResult:
    if not is_irreducible(aggregate(psi)):
        return CheckResult("norm_characterization", "skip", "aggregate is reducible")
    nu = barabanov_norm(psi, tol=tol)
    radius = jsr(psi, tol=tol)
    worst = max(induced_norm(mat, nu) for _, mat in psi)
    if not close(worst, radius, tol):
        return CheckResult("norm_characterization", "fail", f"{worst} vs {radius}")
    if not verify_extremal(psi, nu, samples=64, tol=tol):
        return CheckResult("norm_characterization", "fail", "extremal check failed")
    if not verify_barabanov(psi, nu, samples=64, tol=tol):
        return CheckResult("norm_characterization", "fail", "attainment check failed")
    return CheckResult("norm_characterization", "pass")


def _check_finiteness(psi: MatrixSet, rng, tol: float) -> CheckResult:
    radius = jsr(psi, tol=tol)
    if radius <= 0.0:
        return CheckResult("finiteness", "skip", "radius is zero")
    cert = finiteness_product(psi, tol=tol)
    if not (1 <= cert.k <= psi.n):
        return CheckResult("finiteness", "fail", f"length {cert.k} outside 1..{psi.n}")
    achieved = cycle_mean(cert.product, tol=tol).mu ** (1.0 / cert.k)
    if not close(achieved, radius, tol):
        return CheckResult("finiteness", "fail", f"{achieved} vs {radius}")
    return CheckResult("finiteness", "pass")


def _check_boundedness(psi: MatrixSet, rng, tol: float) -> CheckResult:
    from .maxcore import _star_raw
    from .jsr import iter_products

    radius = jsr(psi, tol=tol)
    if radius <= 0.0:
        return CheckResult("boundedness", "skip", "radius is zero")
    if len(psi) ** 4 > 4096:
        return CheckResult("boundedness", "skip", "too many members for depth-4 enumeration")
    normalized = MatrixSet([(name, MaxMatrix(mat.data / radius)) for name, mat in psi])
    cap = _star_raw(aggregate(normalized).data).max()
    for m in (1, 2, 3, 4):
        for _, prod in iter_products(normalized, m):
            if not leq(prod.max(), cap, tol):
                return CheckResult("boundedness", "fail", f"product at depth {m} escaped the star bound")
    return CheckResult("boundedness", "pass")


def _check_lipschitz_transfer(psi: MatrixSet, rng, tol: float) -> CheckResult:
    if not is_irreducible(aggregate(psi)):
        return CheckResult("lipschitz_transfer", "skip", "aggregate is reducible")
    base_radius = jsr(psi, tol=tol)
    ecc_here = eccentricity(barabanov_norm(psi, tol=tol)).value
    for _ in range(4):
        bumped = []
        for name, mat in psi:
            noise = rng.uniform(-0.01, 0.01, (psi.n, psi.n))
            bumped.append((name, MaxMatrix(np.maximum(mat.data + noise, 0.0))))
        other = MatrixSet(bumped)
        if not is_irreducible(aggregate(other)):
            continue
        dist = hausdorff(psi, other).distance
        gap = abs(jsr(other, tol=tol) - base_radius)
        bound = max(ecc_here, eccentricity(barabanov_norm(other, tol=tol)).value)
        if gap > bound * dist + 1e-8:
            return CheckResult("lipschitz_transfer", "fail", f"gap {gap} above {bound} * {dist}")
        smap_gap = float(np.abs(aggregate(psi).data - aggregate(other).data).max())
        if smap_gap > dist + 1e-9:
            return CheckResult("lipschitz_transfer", "fail", "aggregate moved farther than the sets")
    return CheckResult("lipschitz_transfer", "pass")


def _check_membership(psi: MatrixSet, rng, tol: float) -> CheckResult:
    gens = [mat for _, mat in psi]
    agg = aggregate(psi)
    cert = hull_membership(agg, gens, mode="conv", tol=tol)
    if not cert.inside:
        return CheckResult("membership", "fail", "aggregate left its own hull")
    if not all(close(c, 1.0, tol) for c in cert.coefficients):
        return CheckResult("membership", "fail", "aggregate needs non-unit coefficients")
    for _ in range(8):
        alpha = rng.random(len(gens))
        alpha /= alpha.max()
        combo = np.zeros_like(agg.data)
        for c, g in zip(alpha, gens):
            np.maximum(combo, c * g.data, out=combo)
        inner = hull_membership(MaxMatrix(combo), gens, mode="conv", tol=tol)
        if not inner.inside:
            return CheckResult("membership", "fail", "a hull combination was rejected")
    return CheckResult("membership", "pass")


def _check_hausdorff_axioms(psi: MatrixSet, rng, tol: float) -> CheckResult:
    def bump():
        mats = []
        for name, mat in psi:
            noise = rng.uniform(-0.05, 0.05, (psi.n, psi.n))
            mats.append((name, MaxMatrix(np.maximum(mat.data + noise, 0.0))))
        return MatrixSet(mats)

    if hausdorff(psi, psi).distance != 0.0:
        return CheckResult("hausdorff_axioms", "fail", "self distance is nonzero")
    a, b, c = bump(), bump(), bump()
    ab, ba = hausdorff(a, b).distance, hausdorff(b, a).distance
    if not close(ab, ba, tol):
        return CheckResult("hausdorff_axioms", "fail", "asymmetric")
    if hausdorff(a, c).distance > ab + hausdorff(b, c).distance + 1e-9:
        return CheckResult("hausdorff_axioms", "fail", "triangle inequality broke")
    return CheckResult("hausdorff_axioms", "pass")


def _check_conv_invariance(psi: MatrixSet, rng, tol: float) -> CheckResult:
    if conv_invariance_check(psi, trials=8, seed=int(rng.integers(2**31)), tol=tol):
        return CheckResult("conv_invariance", "pass")
    return CheckResult("conv_invariance", "fail", "a hull combination moved the radius")


def _check_nonexistence_consistency(psi: MatrixSet, rng, tol: float) -> CheckResult:
    verdict = barabanov_nonexistence(psi, tol=tol)
    if is_irreducible(aggregate(psi)) and verdict.obstructed:
        return CheckResult("nonexistence_consistency", "fail", "obstruction claimed on an irreducible set")
    if verdict.obstructed:
        from .maxcore import apply as max_apply

        image = max_apply(aggregate(psi), verdict.witness).data
        expected = verdict.eigenvalue * verdict.witness.data
        if not np.allclose(image, expected, rtol=0.0, atol=tol * max(1.0, float(expected.max()))):
            return CheckResult("nonexistence_consistency", "fail", "witness fails its eigen equation")
    return CheckResult("nonexistence_consistency", "pass")


def _check_dominance(psi: MatrixSet, rng, tol: float) -> CheckResult:
    if not is_irreducible(aggregate(psi)):
        return CheckResult("dominance", "skip", "aggregate is reducible")
    if jsr(psi, tol=tol) <= 0.0:
        return CheckResult("dominance", "skip", "radius is zero")
    shrunk = MatrixSet([(name, MaxMatrix(0.5 * mat.data)) for name, mat in psi])
    verdict = strict_dominance(shrunk, psi, tol=tol)
    if not verdict.dominated or not close(verdict.scale, 2.0, tol):
        return CheckResult("dominance", "fail", "halved set not strictly dominated with headroom 2")
    if not jsr(shrunk, tol=tol) < jsr(psi, tol=tol):
        return CheckResult("dominance", "fail", "radius did not drop strictly")
    return CheckResult("dominance", "pass")


_CHECKS = (
    _check_semiring_laws,
    _check_spectral_identities,
    _check_oracle_agreement,
    _check_sandwich,
    _check_similarity,
    _check_homogeneity,
    _check_norm_characterization,
    _check_finiteness,
    _check_boundedness,
    _check_lipschitz_transfer,
    _check_membership,
    _check_hausdorff_axioms,
    _check_conv_invariance,
    _check_nonexistence_consistency,
    _check_dominance,
)


def run_suite(psi: MatrixSet, extra_instances: int = 0, seed: int = 0,
              tol: float | None = None) -> list[CheckResult]:
    """Run every check on the given set and on random companion instances."""
    t = resolve_tolerance(tol)
    targets = [("input", psi)]
    for k in range(extra_instances):
        spec = InstanceSpec(
            n=2 + k % 4,
            set_size=1 + k % 3,
            density=(0.5, 0.8, 1.0)[k % 3],
            seed=seed + 7919 * (k + 1),
            require_irreducible=k % 2 == 0,
        )
        targets.append((f"random{k}", generate(spec)))

    results = []
    for index, (label, target) in enumerate(targets):
        rng = np.random.default_rng(seed + 104729 * index)
        for check in _CHECKS:
            res = check(target, rng, t)
            results.append(CheckResult(f"{label}:{res.name}", res.status, res.detail))
    return results
