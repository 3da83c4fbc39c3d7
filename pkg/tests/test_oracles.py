import numpy as np
import pytest

from conftest import golden_pair, random_entries
from maxjsr import (
    BudgetError,
    GenerationError,
    InstanceSpec,
    MatrixSet,
    MaxMatrix,
    aggregate,
    bf_cycle_mean,
    bf_gsr_truncation,
    enumerate_cycles,
    generate,
    is_irreducible,
    jsr,
    max_power,
)


class TestEnumerateCycles:
    def test_complete_digraph_count(self):
        # 4 + 6 + 8 + 6 elementary cycles on the complete digraph with loops
        cycles = enumerate_cycles(MaxMatrix(np.ones((4, 4))))
        assert len(cycles) == 24
        assert all(mean == 1.0 for _, mean in cycles)

    def test_each_cycle_rooted_at_smallest_node(self):
        rng = np.random.default_rng(41)
        cycles = enumerate_cycles(MaxMatrix(random_entries(rng, 6, density=0.5)))
        seen = set()
        for cyc, _ in cycles:
            assert cyc[0] == min(cyc)
            assert cyc not in seen
            seen.add(cyc)


class TestBfCycleMean:
    def test_diagonal(self):
        res = bf_cycle_mean(MaxMatrix(np.diag([1.0, 7.0, 3.0])))
        assert res.mu == 7.0
        assert res.witness_cycle == (1,)
        assert res.unique_critical is True

    def test_self_loop_beats_two_cycle(self):
        assert bf_cycle_mean(MaxMatrix([[2.0, 3.0], [4.0, 5.0]])).mu == 5.0

    def test_golden_aggregate(self):
        res = bf_cycle_mean(aggregate(golden_pair()))
        assert res.mu == pytest.approx(1.0, rel=1e-12)
        assert res.witness_cycle == (0, 1, 2)

    def test_dimension_guard(self):
        with pytest.raises(BudgetError):
            bf_cycle_mean(MaxMatrix(np.ones((10, 10))))

    def test_tie_detection(self):
        res = bf_cycle_mean(MaxMatrix([[2.0, 0.0], [0.0, 2.0]]))
        assert res.mu == 2.0
        assert res.unique_critical is False


class TestBfGsrTruncation:
    def test_singleton(self):
        rng = np.random.default_rng(42)
        a = MaxMatrix(random_entries(rng, 3))
        psi = MatrixSet([("A", a)])
        for m in (1, 2, 3):
            lower, upper = bf_gsr_truncation(psi, m)
            assert lower == pytest.approx(bf_cycle_mean(a).mu, rel=1e-12)
            norm = float(max_power(a, m).data.sum(axis=1).max())
            assert upper == pytest.approx(norm ** (1.0 / m), rel=1e-12)

    def test_golden_depth_three_attains_radius(self):
        lower, upper = bf_gsr_truncation(golden_pair(), 3)
        assert lower == pytest.approx(1.0, rel=1e-12)
        assert upper >= 1.0 - 1e-12

    def test_zero_matrix(self):
        psi = MatrixSet([("Z", MaxMatrix.zeros(2))])
        assert bf_gsr_truncation(psi, 2) == (0.0, 0.0)

    def test_budget_guard(self):
        psi = golden_pair()
        with pytest.raises(BudgetError):
            bf_gsr_truncation(psi, 21)  # 2^21 > 10^6

    def test_sandwich_brackets_radius(self):
        rng = np.random.default_rng(43)
        for _ in range(10):
            n = int(rng.integers(2, 5))
            size = int(rng.integers(1, 4))
            psi = MatrixSet.from_matrices(
                [MaxMatrix(random_entries(rng, n, density=0.7)) for _ in range(size)]
            )
            radius = jsr(psi)
            for m in range(1, 6):
                lower, upper = bf_gsr_truncation(psi, m)
                assert lower <= radius + 1e-9
                assert upper >= radius - 1e-9


class TestGenerate:
    def test_deterministic(self):
        spec = InstanceSpec(n=4, set_size=3, density=0.5, seed=99)
        a = generate(spec)
        b = generate(spec)
        assert a.names == b.names
        for (_, ma), (_, mb) in zip(a, b):
            assert ma == mb

    def test_full_density_is_irreducible(self):
        spec = InstanceSpec(n=5, set_size=2, density=1.0, seed=7, require_irreducible=True)
        assert is_irreducible(aggregate(generate(spec)))

    def test_invariants_across_seeds(self):
        for seed in range(50):
            spec = InstanceSpec(n=5, set_size=2, density=0.3, seed=seed)
            psi = generate(spec)
            assert psi.n == 5 and len(psi) == 2
            for _, mat in psi:
                data = mat.data
                assert np.isfinite(data).all() and (data >= 0).all()
                positive = data[data > 0]
                assert ((positive >= 0.1) & (positive <= 10.0)).all()

    def test_hopeless_spec_raises(self):
        spec = InstanceSpec(n=6, set_size=1, density=1e-4, seed=0, require_irreducible=True)
        with pytest.raises(GenerationError):
            generate(spec)

    def test_bad_spec_rejected(self):
        with pytest.raises(ValueError):
            InstanceSpec(n=3, density=0.0)
        with pytest.raises(ValueError):
            InstanceSpec(n=3, entry_range=(0.0, 1.0))
