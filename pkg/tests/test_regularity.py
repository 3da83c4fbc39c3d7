import numpy as np
import pytest

from conftest import golden_pair, random_entries
from maxjsr import (
    DimensionMismatchError,
    InstanceSpec,
    IrreducibilityError,
    MatrixSet,
    MaxMatrix,
    aggregate,
    barabanov_norm,
    eccentricity,
    eccentricity_along_sequence,
    generate,
    hausdorff,
    jsr,
    mu_gradient,
    probe_matrix_regularity,
    probe_set_regularity,
)

NILPOTENT = [[0.0, 1.0], [0.0, 0.0]]


class TestMatrixProbe:
    def test_lipschitz_region_is_seed_stable(self):
        rng = np.random.default_rng(71)
        a = random_entries(rng, 3, low=0.5, high=2.0)
        ratios = [
            probe_matrix_regularity(a, radius=1e-3, pairs=256, alpha=1.0, seed=s).max_ratio
            for s in range(10)
        ]
        assert max(ratios) <= 2.0 * min(ratios)

    def test_degenerate_matrix_order_half(self):
        half = probe_matrix_regularity(NILPOTENT, radius=1e-2, pairs=512, alpha=0.5, seed=0)
        assert half.max_ratio <= 2.0
        coarse = probe_matrix_regularity(NILPOTENT, radius=1e-2, pairs=512, alpha=1.0, seed=0)
        fine = probe_matrix_regularity(NILPOTENT, radius=1e-6, pairs=512, alpha=1.0, seed=0)
        assert fine.max_ratio >= 50.0 * coarse.max_ratio  # ~100x for a 1e4 radius drop

    def test_differentiable_point_matches_gradient_norm(self):
        a = MaxMatrix([[3.0, 0.0], [0.0, 1.0]])
        probe = probe_matrix_regularity(a, radius=1e-4, pairs=2048, alpha=1.0, seed=0)
        grad_norm = float(np.abs(mu_gradient(a)).max())
        assert probe.max_ratio == pytest.approx(grad_norm, rel=0.1)

    def test_clamps_are_counted(self):
        probe = probe_matrix_regularity(NILPOTENT, radius=1e-2, pairs=64, alpha=1.0, seed=1)
        assert probe.clamped > 0
        assert probe.pairs == 64

    def test_bad_radius_rejected(self):
        with pytest.raises(ValueError):
            probe_matrix_regularity(NILPOTENT, radius=0.0)


class TestSetProbe:
    def test_golden_lipschitz_below_eccentricity(self):
        psi = golden_pair()
        probe = probe_set_regularity(psi, radius=1e-3, pairs=256, alpha=1.0, seed=0)
        bound = eccentricity(barabanov_norm(psi)).value
        assert probe.max_ratio <= bound + 1e-9

    def test_hoelder_exponent_is_finite_for_any_set(self):
        psi = MatrixSet([("N", MaxMatrix(NILPOTENT))])
        probe = probe_set_regularity(psi, radius=1e-3, pairs=256, alpha=0.5, seed=0)
        assert np.isfinite(probe.max_ratio)

    def test_zero_distance_pairs_are_skipped(self):
        psi = MatrixSet([("Z", MaxMatrix([[0.0]]))])
        probe = probe_set_regularity(psi, radius=1.0, pairs=64, alpha=1.0, seed=0)
        assert probe.skipped > 0  # both draws clamp to the zero matrix regularly
        assert np.isfinite(probe.max_ratio)

    def test_smap_is_one_lipschitz(self):
        rng = np.random.default_rng(72)
        for seed in range(10):
            psi = generate(InstanceSpec(n=3, set_size=2, density=0.8, seed=seed))
            bump = [
                (name, MaxMatrix(np.maximum(mat.data + rng.uniform(-0.05, 0.05, (3, 3)), 0.0)))
                for name, mat in psi
            ]
            phi = MatrixSet(bump)
            # entrywise gap: each aggregate entry moves at most the Hausdorff
            # distance (row sums may move up to n times as far)
            smap_gap = float(np.abs(aggregate(psi).data - aggregate(phi).data).max())
            assert smap_gap <= hausdorff(psi, phi).distance + 1e-9

    def test_lipschitz_transfer_bound(self):
        checked = 0
        seed = 0
        while checked < 10:
            seed += 1
            psi = generate(
                InstanceSpec(n=3, set_size=2, density=1.0, entry_range=(0.5, 2.0),
                             seed=seed, require_irreducible=True)
            )
            rng = np.random.default_rng(seed + 1000)
            phi = MatrixSet(
                [(name, MaxMatrix(mat.data + rng.uniform(-0.01, 0.01, (3, 3)) * (mat.data > 0)))
                 for name, mat in psi]
            )
            bound = max(
                eccentricity(barabanov_norm(psi)).value,
                eccentricity(barabanov_norm(phi)).value,
            )
            gap = abs(jsr(psi) - jsr(phi))
            assert gap <= bound * hausdorff(psi, phi).distance + 1e-8
            checked += 1

    def test_gradient_consistency_directional(self):
        rng = np.random.default_rng(73)
        a = random_entries(rng, 3, low=0.5, high=3.0)
        grad = mu_gradient(MaxMatrix(a))
        direction = rng.uniform(-1.0, 1.0, (3, 3))
        h = 1e-6
        fd = (jsr(MatrixSet([("X", MaxMatrix(a + h * direction))]))
              - jsr(MatrixSet([("X", MaxMatrix(a - h * direction))]))) / (2 * h)
        assert abs(fd - float((grad * direction).sum())) <= 1e-5


class TestEccentricityAlongSequence:
    def test_constant_path(self):
        psi = golden_pair()
        values = eccentricity_along_sequence(psi, psi, steps=5)
        assert len(values) == 5
        assert all(v.value == pytest.approx(values[0].value, rel=1e-12) for v in values)

    def test_random_path_stays_bounded(self):
        a = generate(InstanceSpec(n=3, set_size=2, density=1.0, seed=5, require_irreducible=True))
        b = generate(InstanceSpec(n=3, set_size=2, density=1.0, seed=6, require_irreducible=True))
        values = eccentricity_along_sequence(a, b, steps=32)
        ends = max(values[0].value, values[-1].value)
        assert all(v.value <= 10.0 * ends for v in values)

    def test_reducible_interpolant_reports_step(self):
        good = MatrixSet([("A", MaxMatrix([[1.0, 1.0], [1.0, 1.0]]))])
        bad = MatrixSet([("A", MaxMatrix([[1.0, 0.0], [0.0, 1.0]]))])
        with pytest.raises(IrreducibilityError) as info:
            eccentricity_along_sequence(good, bad, steps=4)
        assert info.value.step == 3  # only the endpoint loses irreducibility

    def test_eccentricity_grows_toward_near_reducible_end(self):
        start = MatrixSet([("A", MaxMatrix([[1.0, 1.0], [1.0, 1.0]]))])
        end = MatrixSet([("A", MaxMatrix([[1.0, 1e-4], [1.0, 1.0]]))])
        values = [v.value for v in eccentricity_along_sequence(start, end, steps=8)]
        assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))
        assert values[-1] > 100.0

    def test_member_count_mismatch_rejected(self):
        one = MatrixSet([("A", MaxMatrix([[1.0]]))])
        two = MatrixSet([("A", MaxMatrix([[1.0]])), ("B", MaxMatrix([[2.0]]))])
        with pytest.raises(DimensionMismatchError):
            eccentricity_along_sequence(one, two, steps=4)
