import math

import numpy as np
import pytest

import oracles
from rqaoa import statevector as sv
from rqaoa.analytic import QaoaParams, level1_energy, level1_zz
from rqaoa.exceptions import CapacityError
from rqaoa.graphs import ring
from rqaoa.model import IsingInstance


def random_instance(rng, n, arity=2, k=10):
    terms = [(tuple(rng.choice(n, size=rng.integers(1, arity + 1), replace=False)), rng.normal())
             for _ in range(k)]
    return IsingInstance(n, terms, constant=0.3)


class TestQaoaState:
    def test_identity_angles(self):
        inst = ring(5)
        st = sv.qaoa_state(inst, QaoaParams.level1(0.0, 0.0))
        assert np.allclose(st.amps, sv.plus_state(5).amps)

    def test_single_edge_saturates(self):
        inst = IsingInstance(2, [((0, 1), 1.0)])
        st = sv.qaoa_state(inst, QaoaParams.level1(math.pi / 8, math.pi / 4))
        assert sv.expectation_zz(st, (0, 1)) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("seed", range(6))
    def test_matches_dense_kron_oracle(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 7))
        inst = random_instance(rng, n, arity=3)
        p = int(rng.integers(1, 4))
        b, g = rng.uniform(0, math.pi, size=(2, p))
        st = sv.qaoa_state(inst, QaoaParams(p, b, g))
        psi = oracles.dense_qaoa_state(n, inst.edges, inst.constant, b, g)
        assert abs(np.vdot(psi, st.amps)) == pytest.approx(1.0, abs=1e-10)
        assert np.allclose(st.amps, psi, atol=1e-10)

    def test_unit_norm(self):
        rng = np.random.default_rng(2)
        inst = random_instance(rng, 10, arity=3, k=25)
        st = sv.qaoa_state(inst, QaoaParams(3, (0.1, 0.5, 0.9), (1.2, 0.4, 2.2)))
        assert st.norm() == pytest.approx(1.0, abs=1e-12)

    def test_capacity(self):
        with pytest.raises(CapacityError):
            sv.qaoa_state(ring(25), QaoaParams.level1(0.1, 0.1))

    def test_circuit_matches_direct_evolution(self):
        inst = ring(6, [1, -1, 1, 1, 1, -1])
        params = QaoaParams(2, (0.3, 0.7), (0.2, 1.1))
        via_circuit = sv.qaoa_circuit(inst, params).apply(sv.plus_state(6))
        assert np.allclose(via_circuit.amps, sv.qaoa_state(inst, params).amps)

    def test_inverse_circuit_undoes(self):
        circ = sv.ghz_block_circuit(6, 1)
        circ.add("h", 2)
        circ.add("cz", 1, 4)
        st = sv.random_state(6, np.random.default_rng(0))
        back = circ.apply(circ.apply(st), inverse=True)
        assert np.allclose(back.amps, st.amps)


class TestExpectations:
    def test_plus_state_zero(self):
        st = sv.plus_state(4)
        assert sv.expectation_zz(st, (0, 2)) == pytest.approx(0.0, abs=1e-15)
        assert sv.expectation_zz(st, (1, 2, 3)) == pytest.approx(0.0, abs=1e-15)

    def test_zero_state_one(self):
        st = sv.zero_state(4)
        assert sv.expectation_zz(st, (0, 3)) == 1.0

    def test_ghz_pairs(self):
        amps = np.zeros(8, dtype=complex)
        amps[0] = amps[7] = 1 / math.sqrt(2)
        st = sv.Statevector(3, amps)
        for e in [(0, 1), (0, 2), (1, 2)]:
            assert sv.expectation_zz(st, e) == pytest.approx(1.0)

    def test_energy_examples(self):
        assert sv.expectation_energy(sv.zero_state(6), ring(6)) == 6.0
        inst = ring(6).with_edges(ring(6).edges, constant=2.5)
        assert sv.expectation_energy(sv.plus_state(6), inst) == pytest.approx(2.5)

    @pytest.mark.parametrize("seed", range(5))
    def test_energy_matches_level1(self, seed):
        rng = np.random.default_rng(seed)
        n = 10
        inst = IsingInstance(n, [((u, v), rng.uniform(-2, 2)) for u in range(n)
                                 for v in range(u + 1, n) if rng.random() < 0.4])
        b, g = rng.uniform(0, math.pi, size=2)
        st = sv.qaoa_state(inst, QaoaParams.level1(b, g))
        assert sv.expectation_energy(st, inst) == pytest.approx(level1_energy(inst, b, g), abs=1e-9)
        assert sv.expectation_zz(st, (0, 1)) == pytest.approx(level1_zz(inst, 0, 1, b, g), abs=1e-9)

    def test_single_z_vanishes_on_qaoa_states(self):
        rng = np.random.default_rng(3)
        inst = IsingInstance(7, [((u, v), rng.normal()) for u in range(7) for v in range(u + 1, 7)
                                 if rng.random() < 0.5])
        st = sv.qaoa_state(inst, QaoaParams(2, (0.2, 0.6), (0.9, 0.1)))
        for j in range(7):
            assert sv.expectation_zz(st, (j,)) == pytest.approx(0.0, abs=1e-12)


class TestGhzBlocks:
    def test_single_block_is_ghz(self):
        st = sv.ghz_block_state(3, 1, flip=False)
        ghz = np.zeros(8, dtype=complex)
        ghz[0] = ghz[7] = 1 / math.sqrt(2)
        assert sv.Statevector(3, ghz).fidelity(st) ** 2 > 1 - 1e-10

    @pytest.mark.parametrize("n,R", [(6, 1), (12, 1), (10, 2), (14, 3)])
    def test_energy_per_site(self, n, R):
        st = sv.ghz_block_state(n, R)
        energy = sv.expectation_energy(st, sv.ring_of_disagrees(n)) / n
        assert energy == pytest.approx((2 * R + 0.5) / (2 * R + 1), abs=1e-9)

    def test_energy_matches_dense_oracle(self):
        st = sv.ghz_block_state(6, 1)
        assert oracles.ring_energy_per_site(st.amps, 6) == pytest.approx(5 / 6, abs=1e-12)

    def test_block_and_boundary_decomposition(self):
        # within a block the cut value is 1, across a block boundary 1/2
        n, R = 10, 2
        st = sv.ghz_block_state(n, R)
        for i in range(n):
            j = (i + 1) % n
            cut = 0.5 * (1 - sv.expectation_zz(st, (i, j)))
            boundary = (i // (2 * R + 1)) != (j // (2 * R + 1))
            assert cut == pytest.approx(0.5 if boundary else 1.0, abs=1e-12)

    def test_divisibility(self):
        with pytest.raises(ValueError):
            sv.ghz_block_circuit(14, 6)
        with pytest.raises(ValueError):
            sv.ghz_block_circuit(9, 1)

    @pytest.mark.parametrize("n,R", [(6, 1), (10, 2)])
    def test_symmetry_and_range(self, n, R):
        st = sv.ghz_block_state(n, R)
        assert sv.check_z2_symmetry(st) == pytest.approx(1.0, abs=1e-10)
        assert sv.check_range(n, R, sv.ghz_block_circuit(n, R))

    def test_block_circuit_range_on_its_own_support(self):
        assert sv.check_range(5, 2, sv.ghz_block_circuit(5, 2, flip=False))


class TestChecks:
    def test_z2_examples(self):
        assert sv.check_z2_symmetry(sv.plus_state(5)) == pytest.approx(1.0)
        assert sv.check_z2_symmetry(sv.zero_state(5)) == pytest.approx(0.0)

    def test_z2_qaoa_state(self):
        inst = ring(8, [1, -1, 1, 1, -1, 1, 1, 1])
        st = sv.qaoa_state(inst, QaoaParams(2, (0.3, 1.0), (0.5, 0.2)))
        assert sv.check_z2_symmetry(st) == pytest.approx(1.0, abs=1e-10)

    def test_z2_agrees_with_dense_flip(self):
        st = sv.random_state(4, np.random.default_rng(1))
        flip = np.eye(1)
        for _ in range(4):
            flip = np.kron(flip, oracles.X)
        assert sv.check_z2_symmetry(st) == pytest.approx(abs(np.vdot(st.amps, flip @ st.amps)))

    def test_identity_circuit_range_zero(self):
        assert sv.check_range(5, 0, sv.Circuit(5))

    def test_cz_spreads_beyond_range(self):
        circ = sv.Circuit(6)
        circ.add("cz", 0, 3)
        for q in range(6):
            circ.add("h", q)
        assert not sv.check_range(6, 1, circ)
        assert sv.check_range(6, 3, circ)

    def test_alternating_flip_complements_ring_energy(self):
        # flipping every other qubit maps each cut edge to an uncut one, so the
        # two expectations sum to n on any state
        n = 8
        H = sv.ring_of_disagrees(n)
        flip = sv.Circuit(n)
        for q in range(0, n, 2):
            flip.add("x", q)
        rng = np.random.default_rng(5)
        for _ in range(50):
            psi = sv.random_state(n, rng)
            total = sv.expectation_energy(flip.apply(psi), H) + sv.expectation_energy(psi, H)
            assert total == pytest.approx(n, abs=1e-12)

    def test_range_cap(self):
        with pytest.raises(CapacityError):
            sv.check_range(13, 1, sv.Circuit(13))


class TestRingSweep:
    def test_p0_is_half(self):
        assert sv.ring_bound_sweep(8, p=0) == pytest.approx(0.5, abs=1e-15)

    def test_p1_n12(self):
        ratio = sv.ring_bound_sweep(12, p=1, grid=64)
        assert ratio == pytest.approx(0.75, abs=1e-3)
        assert ratio <= 5 / 6

    def test_p2_respects_bounds(self):
        ratio = sv.ring_bound_sweep(10, p=2, grid=16, refine_iters=60)
        assert 0.75 < ratio <= 5 / 6 + 1e-9

    def test_rejects_odd(self):
        with pytest.raises(ValueError):
            sv.ring_bound_sweep(7)
