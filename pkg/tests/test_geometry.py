from fractions import Fraction

import numpy as np
import pytest

from conftest import golden_pair, random_entries
from maxjsr import (
    DegenerateSpectrumError,
    DimensionMismatchError,
    IrreducibilityError,
    MatrixSet,
    MaxMatrix,
    MaxVector,
    WeightedMaxNorm,
    aggregate,
    eccentricity,
    hausdorff,
    hull_membership,
    jsr,
    strict_dominance,
)


class TestHullMembership:
    def test_generator_is_inside_conv(self):
        gens = [np.array([2.0, 1.0]), np.array([1.0, 2.0])]
        cert = hull_membership(gens[0], gens, mode="conv")
        assert cert.inside
        assert cert.coefficients[0] == pytest.approx(1.0)

    def test_span_vs_conv_clamp(self):
        gens = [np.array([2.0, 1.0]), np.array([1.0, 2.0])]
        span = hull_membership(np.array([1.0, 1.0]), gens, mode="span")
        assert span.inside
        assert span.coefficients == (0.5, 0.5)
        conv = hull_membership(np.array([1.0, 1.0]), gens, mode="conv")
        assert not conv.inside

    def test_conv_combination_of_extremes(self):
        gens = [np.array([2.0, 1.0]), np.array([1.0, 2.0])]
        cert = hull_membership(np.array([2.0, 2.0]), gens, mode="conv")
        assert cert.inside
        assert cert.coefficients == (1.0, 1.0)

    def test_zero_target(self):
        gens = [np.array([1.0, 2.0])]
        assert hull_membership(np.zeros(2), gens, mode="span").inside
        assert not hull_membership(np.zeros(2), gens, mode="conv").inside
        with_zero_gen = gens + [np.zeros(2)]
        assert hull_membership(np.zeros(2), with_zero_gen, mode="conv").inside

    def test_zero_generator_contributes_nothing(self):
        gens = [np.zeros(2), np.array([1.0, 1.0])]
        cert = hull_membership(np.array([0.5, 0.5]), gens, mode="span")
        assert cert.inside
        assert cert.coefficients == (1.0, 0.5)  # zero generator capped at one

    def test_matrix_arguments_flatten(self):
        psi = golden_pair()
        cert = hull_membership(aggregate(psi), [m for _, m in psi], mode="conv")
        assert cert.inside
        assert all(c == pytest.approx(1.0, rel=1e-12) for c in cert.coefficients)

    def test_shape_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            hull_membership(np.ones(2), [np.ones(3)])

    def test_certificates_self_verify(self):
        rng = np.random.default_rng(61)
        for _ in range(100):
            dim = int(rng.integers(1, 6))
            count = int(rng.integers(1, 5))
            gens = [random_entries(rng, 1, density=0.8, low=0.1, high=10.0)[0]
                    for _ in range(count)]
            gens = [rng.uniform(0.0, 3.0, dim) for _ in range(count)]
            if rng.random() < 0.5:
                alpha = rng.uniform(0.0, 1.0, count)
                alpha[int(rng.integers(count))] = 1.0
                target = np.max(alpha[:, None] * np.array(gens), axis=0)
            else:
                target = rng.uniform(0.0, 3.0, dim)
            for mode in ("span", "conv"):
                cert = hull_membership(target, gens, mode=mode)
                if cert.inside:
                    combo = np.max(np.array(cert.coefficients)[:, None] * np.array(gens), axis=0)
                    assert np.allclose(combo, target, rtol=1e-9, atol=1e-9)
                    if mode == "conv":
                        assert max(cert.coefficients) == pytest.approx(1.0, rel=1e-9)

    def test_rational_agreement_on_dyadic_instances(self):
        rng = np.random.default_rng(62)
        for _ in range(25):
            dim = int(rng.integers(1, 5))
            count = int(rng.integers(1, 4))
            gens = [rng.integers(0, 65, dim) / 64.0 for _ in range(count)]
            if rng.random() < 0.5:
                alpha = rng.integers(1, 65, count) / 64.0
                target = np.max(alpha[:, None] * np.array(gens), axis=0)
            else:
                target = rng.integers(0, 65, dim) / 64.0
            float_inside = hull_membership(target, gens, mode="span").inside

            frac_target = [Fraction(x) for x in target]
            frac_gens = [[Fraction(x) for x in g] for g in gens]
            coeffs = []
            for g in frac_gens:
                support = [j for j in range(dim) if g[j] > 0]
                coeffs.append(min((frac_target[j] / g[j] for j in support), default=Fraction(1)))
            combo = [max((c * g[j] for c, g in zip(coeffs, frac_gens)), default=Fraction(0))
                     for j in range(dim)]
            exact_inside = combo == frac_target
            assert float_inside == exact_inside


class TestHausdorff:
    def test_self_distance_zero(self, golden_set):
        report = hausdorff(golden_set, golden_set)
        assert report.distance == 0.0

    def test_uniform_bump(self):
        rng = np.random.default_rng(63)
        a = MaxMatrix(random_entries(rng, 3))
        psi = MatrixSet([("A", a)])
        phi = MatrixSet([("A+", MaxMatrix(a.data + 0.01))])
        report = hausdorff(psi, phi)
        assert report.distance == pytest.approx(0.03, rel=1e-12)

    def test_symmetry_and_triangle(self):
        rng = np.random.default_rng(64)
        sets = []
        for _ in range(3):
            sets.append(
                MatrixSet.from_matrices(
                    [MaxMatrix(random_entries(rng, 3, density=0.8)) for _ in range(2)]
                )
            )
        a, b, c = sets
        assert hausdorff(a, b).distance == hausdorff(b, a).distance
        assert hausdorff(a, c).distance <= hausdorff(a, b).distance + hausdorff(b, c).distance + 1e-12

    def test_argmax_member_reported(self):
        near = MaxMatrix([[1.0]])
        far = MaxMatrix([[5.0]])
        psi = MatrixSet([("near", near), ("far", far)])
        phi = MatrixSet([("only", MaxMatrix([[1.0]]))])
        report = hausdorff(psi, phi)
        assert report.distance == 4.0
        assert report.argmax_member == "far"
        assert report.argmax_side == "left"

    def test_dimension_mismatch(self, golden_set):
        with pytest.raises(DimensionMismatchError):
            hausdorff(golden_set, MatrixSet([("X", MaxMatrix.identity(2))]))


class TestEccentricity:
    def test_uniform(self):
        assert eccentricity(WeightedMaxNorm.uniform(4)).value == 1.0

    def test_golden_weights(self):
        nu = WeightedMaxNorm(MaxVector([1.0, 0.5, 5 / 3]))
        assert eccentricity(nu).value == pytest.approx(10 / 3, rel=1e-12)

    def test_scale_invariance(self):
        rng = np.random.default_rng(65)
        w = np.exp(rng.uniform(-2, 2, 5))
        one = eccentricity(WeightedMaxNorm(MaxVector(w))).value
        other = eccentricity(WeightedMaxNorm(MaxVector(7.5 * w))).value
        assert one == pytest.approx(other, rel=1e-12)


class TestStrictDominance:
    def test_half_scale_dominates(self, golden_set):
        shrunk = MatrixSet([(n, MaxMatrix(0.5 * m.data)) for n, m in golden_set])
        verdict = strict_dominance(shrunk, golden_set)
        assert verdict.dominated
        assert verdict.scale == pytest.approx(2.0, rel=1e-12)
        assert jsr(shrunk) == pytest.approx(0.5 * jsr(golden_set), rel=1e-12)

    def test_equal_sets_not_dominated(self, golden_set):
        verdict = strict_dominance(golden_set, golden_set)
        assert not verdict
        assert verdict.ratio == 1.0

    def test_new_support_blocks_dominance(self):
        psi1 = MatrixSet([("P", MaxMatrix([[0.1, 0.1], [0.1, 0.1]]))])
        psi2 = MatrixSet([("S", MaxMatrix([[0.0, 1.0], [1.0, 0.0]]))])
        verdict = strict_dominance(psi1, psi2)  # (0,0) support has no counterpart
        assert not verdict
        assert verdict.ratio == np.inf

    def test_reducible_dominator_rejected(self, golden_set):
        psi2 = MatrixSet([("B", MaxMatrix([[2.0, 0.0], [1.0, 1.0]]))])
        psi1 = MatrixSet([("A", MaxMatrix.identity(2))])
        with pytest.raises(IrreducibilityError):
            strict_dominance(psi1, psi2)

    def test_zero_radius_dominator_rejected(self):
        psi1 = MatrixSet([("A", MaxMatrix([[0.0]]))])
        psi2 = MatrixSet([("B", MaxMatrix([[0.0]]))])
        with pytest.raises(DegenerateSpectrumError):
            strict_dominance(psi1, psi2)

    def test_dominance_implies_strict_radius_drop(self):
        rng = np.random.default_rng(66)
        found = 0
        while found < 15:
            n = int(rng.integers(2, 6))
            base = random_entries(rng, n, density=1.0)
            psi2 = MatrixSet([("S", MaxMatrix(base))])
            factor = rng.uniform(0.2, 0.95)
            psi1 = MatrixSet([("P", MaxMatrix(factor * base))])
            verdict = strict_dominance(psi1, psi2)
            assert verdict.dominated
            assert jsr(psi1) <= jsr(psi2) / verdict.scale + 1e-12
            assert jsr(psi1) < jsr(psi2)
            found += 1
