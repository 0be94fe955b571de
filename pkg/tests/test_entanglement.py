import math

import numpy as np
import pytest

from scatgate import (
    CZ,
    SWAP,
    CollisionConfig,
    TwoQubitGate,
    boson_gate,
    concurrence,
    entangling_power,
    fermion_gate,
    locally_equivalent,
    makhlin_invariants,
    max_basis_concurrence,
    optimality_sweep,
    spinless_gate,
    spinless_gate_idealized,
    sweep_to_csv,
)
from scatgate.gates import SpinlessEncoding


def random_local(rng):
    """Haar-random SU(2) x SU(2) as a 4x4 matrix."""
    def haar2():
        z = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        q, r = np.linalg.qr(z)
        return q * (np.diag(r) / np.abs(np.diag(r)))
    return np.kron(haar2(), haar2())


class TestConcurrence:
    def test_bell_state(self):
        state = np.array([0, 1, -1j, 0]) / np.sqrt(2)
        assert abs(concurrence(state) - 1.0) < 1e-15

    def test_product_state(self):
        assert concurrence(np.array([1, 0, 0, 0], dtype=complex)) == 0.0

    @pytest.mark.parametrize("theta", np.linspace(0.0, np.pi / 2, 7))
    def test_partially_entangled_family(self, theta):
        state = np.array([0, math.cos(theta), math.sin(theta), 0], dtype=complex)
        assert abs(concurrence(state) - math.sin(2 * theta)) < 1e-12

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError, match="not normalized"):
            concurrence(np.array([1.0, 1.0, 0, 0]))

    def test_invariant_under_local_unitaries(self):
        rng = np.random.default_rng(42)
        state = np.array([0.1, 0.7, -0.3j, 0.5], dtype=complex)
        state /= np.linalg.norm(state)
        base = concurrence(state)
        for _ in range(20):
            rotated = random_local(rng) @ state
            assert abs(concurrence(rotated) - base) < 1e-10


class TestMakhlinInvariants:
    def test_canonical_values(self):
        ident = makhlin_invariants(TwoQubitGate(np.eye(4, dtype=complex)))
        assert abs(ident.g1 - 1.0) < 1e-12 and abs(ident.g2 - 3.0) < 1e-12
        cz = makhlin_invariants(TwoQubitGate(CZ))
        assert abs(cz.g1) < 1e-12 and abs(cz.g2 - 1.0) < 1e-12
        swap = makhlin_invariants(TwoQubitGate(SWAP))
        assert abs(swap.g1 + 1.0) < 1e-12 and abs(swap.g2 + 3.0) < 1e-12

    def test_sign_flipped_cz_matches_cz(self):
        a = makhlin_invariants(spinless_gate_idealized())
        b = makhlin_invariants(TwoQubitGate(CZ))
        assert abs(a.g1 - b.g1) < 1e-12 and abs(a.g2 - b.g2) < 1e-12

    def test_invariant_under_local_composition_and_global_phase(self):
        rng = np.random.default_rng(3)
        gate = fermion_gate(CollisionConfig(0.8, 0.4, 1.3))
        base = makhlin_invariants(gate)
        for _ in range(10):
            dressed = random_local(rng) @ gate.matrix @ random_local(rng)
            dressed = np.exp(1j * rng.uniform(0, 2 * np.pi)) * dressed
            inv = makhlin_invariants(TwoQubitGate(dressed))
            assert abs(inv.g1 - base.g1) < 1e-9
            assert abs(inv.g2 - base.g2) < 1e-9

    def test_rejects_non_unitary(self):
        with pytest.raises(ValueError, match="not unitary"):
            makhlin_invariants(np.diag([1.0, 1.0, 1.0, 0.5]))


class TestLocalEquivalence:
    def test_idealized_gate_is_cz_class(self):
        assert locally_equivalent(spinless_gate_idealized(), TwoQubitGate(CZ))

    def test_identity_is_not_cz_class(self):
        assert not locally_equivalent(TwoQubitGate(np.eye(4, dtype=complex)),
                                      TwoQubitGate(CZ))

    def test_finite_ratio_gate_near_cz_class(self):
        gate = spinless_gate(SpinlessEncoding(1e-3, 1e3), 1.0)
        assert locally_equivalent(gate, TwoQubitGate(CZ), tol=1e-4)

    def test_boson_and_fermion_at_optimum_are_mirror_classes(self):
        # Direct invariant evaluation: the two maximally entangling gates have
        # conjugate g1 = -+ i/4 (mirror gate classes), hence are NOT locally
        # equivalent even though their entangling properties coincide.
        cfg = CollisionConfig(0.5, 0.5, 1.0)
        b = makhlin_invariants(boson_gate(cfg))
        f = makhlin_invariants(fermion_gate(cfg))
        assert abs(b.g1 - (-0.25j)) < 1e-12 and abs(b.g2) < 1e-12
        assert abs(f.g1 - 0.25j) < 1e-12 and abs(f.g2) < 1e-12
        assert abs(b.g1 - np.conj(f.g1)) < 1e-12
        assert not locally_equivalent(boson_gate(cfg), fermion_gate(cfg))


class TestEntanglingPower:
    def test_identity_has_none(self):
        ep, se = entangling_power(TwoQubitGate(np.eye(4, dtype=complex)),
                                  samples=5000, seed=1)
        assert ep < 1e-25

    def test_cz_value(self):
        # Monte-Carlo oracle (4e6 samples, several seeds) confirms the mean
        # squared concurrence of CZ over Haar product inputs is 4/9.
        ep, se = entangling_power(TwoQubitGate(CZ), samples=200_000, seed=5)
        assert abs(ep - 4.0 / 9.0) < 4 * se
        assert se < 1e-3

    def test_deterministic_given_seed(self):
        gate = boson_gate(CollisionConfig(0.5, 0.5, 1.0))
        assert entangling_power(gate, 5000, seed=9) == entangling_power(gate, 5000, seed=9)

    def test_relabeling_symmetry(self):
        gate = fermion_gate(CollisionConfig(0.9, 0.3, 1.0))
        relabeled = TwoQubitGate(SWAP @ gate.matrix @ SWAP)
        ep1, se1 = entangling_power(gate, 100_000, seed=2)
        ep2, se2 = entangling_power(relabeled, 100_000, seed=3)
        assert abs(ep1 - ep2) < 4 * math.hypot(se1, se2)

    def test_rejects_tiny_sample_counts(self):
        with pytest.raises(ValueError, match="samples"):
            entangling_power(TwoQubitGate(CZ), samples=10, seed=0)


class TestOptimalitySweep:
    def test_fermion_at_optimum_reaches_full_concurrence(self):
        (row,) = optimality_sweep([1.0], samples=2000, seed=0, family="fermion")
        assert abs(row.max_concurrence - 1.0) < 1e-12

    def test_deep_swap_regime_produces_no_basis_entanglement(self):
        (row,) = optimality_sweep([1e-6], samples=2000, seed=0, family="boson")
        assert row.max_concurrence < 1e-5

    def test_analytic_basis_concurrence(self):
        # reading the off-diagonal amplitudes off the gate: C = 2 p c/(p^2+c^2)
        for ratio in (0.3, 1.0, 4.2):
            for family in (boson_gate, fermion_gate):
                gate = family(CollisionConfig(ratio / 2, ratio / 2, 1.0))
                expected = 2 * ratio / (1 + ratio**2)
                assert abs(max_basis_concurrence(gate) - expected) < 1e-12

    def test_ratio_inversion_symmetry(self):
        for ratio in (0.17, 2.5, 9.0):
            g_lo = boson_gate(CollisionConfig(ratio / 2, ratio / 2, 1.0))
            g_hi = boson_gate(CollisionConfig(0.5 / ratio, 0.5 / ratio, 1.0))
            assert abs(max_basis_concurrence(g_lo) - max_basis_concurrence(g_hi)) < 1e-12

    def test_peak_near_unit_ratio(self):
        ratios = list(np.geomspace(0.05, 20.0, 11))
        rows = optimality_sweep(ratios, samples=20_000, seed=4, family="boson")
        peak = max(range(len(rows)), key=lambda i: rows[i].entangling_power)
        nearest = min(range(len(ratios)), key=lambda i: abs(math.log(ratios[i])))
        assert abs(peak - nearest) <= 1

    def test_deterministic_and_sorted(self):
        ratios = [0.5, 1.0, 2.0]
        a = optimality_sweep(ratios, 2000, seed=7, family="fermion")
        b = optimality_sweep(ratios, 2000, seed=7, family="fermion")
        assert a == b
        assert [r.ratio for r in a] == sorted(r.ratio for r in a)

    @pytest.mark.parametrize("ratios", [[], [1.0, 0.5], [-1.0, 2.0], [1.0, 1.0]])
    def test_rejects_bad_ratio_lists(self, ratios):
        with pytest.raises(ValueError):
            optimality_sweep(ratios, 2000, seed=0, family="boson")

    def test_rejects_unknown_family(self):
        with pytest.raises(ValueError, match="family"):
            optimality_sweep([1.0], 2000, seed=0, family="anyon")


class TestSweepCsv:
    def test_format(self):
        rows = optimality_sweep([1.0], samples=2000, seed=0, family="fermion")
        text = sweep_to_csv(rows)
        lines = text.split("\n")
        assert lines[0] == "ratio,entangling_power,stderr,max_concurrence"
        assert lines[1].startswith("1,")
        assert text.endswith("\n") and "\r" not in text
