import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from rqaoa.exceptions import ArityError, DimensionError, ParityError
from rqaoa.exact import brute_force_max
from rqaoa.graphs import ring
from rqaoa.model import (IsingInstance, apply_gauge, as_spins, bits_from_spins, corollary1_bound,
                         coupling_parity, depth_bound, evaluate, max_cut_form, spins_from_bits,
                         spins_from_index)


@st.composite
def instances(draw, max_n=8, max_arity=3, integer=True):
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(0, 12))
    terms = []
    for _ in range(k):
        size = draw(st.integers(1, min(max_arity, n)))
        verts = draw(st.lists(st.integers(0, n - 1), min_size=size, max_size=size, unique=True))
        if integer:
            w = draw(st.integers(-3, 3))
        else:
            w = draw(st.floats(-2, 2, allow_nan=False))
        terms.append((tuple(verts), float(w)))
    return IsingInstance(n, terms, draw(st.integers(-2, 2)))


def spins(n, rng):
    return rng.choice(np.array([1, -1]), size=n)


class TestCanonicalForm:
    def test_duplicates_merge_and_zero_drops(self):
        inst = IsingInstance(3, [((1, 0), 1.0), ((0, 1), 2.0), ((1, 2), 1.0), ((2, 1), -1.0)])
        assert inst.edges == (((0, 1), 3.0),)

    def test_empty_edge_goes_to_constant(self):
        inst = IsingInstance(2, [((), 2.5), ((0, 0), 1.0), ((0, 1), 1.0)], constant=1.0)
        assert inst.constant == 4.5
        assert inst.edges == (((0, 1), 1.0),)

    def test_repeated_vertex_cancels(self):
        inst = IsingInstance(3, [((0, 1, 1, 2), 1.0)])
        assert inst.edges == (((0, 2), 1.0),)

    def test_out_of_range_vertex(self):
        with pytest.raises(ValueError):
            IsingInstance(2, [((0, 2), 1.0)])

    def test_json_round_trip_is_byte_identical(self):
        inst = IsingInstance(4, [((2, 0), 1.5), ((1, 2, 3), -1.0)], constant=0.25)
        text = inst.to_json()
        back = IsingInstance.from_json(text)
        assert back == inst
        assert back.to_json() == text

    def test_incidence(self):
        inst = ring(4)
        indptr, indices = inst.incidence()
        for v in range(4):
            for k in indices[indptr[v]:indptr[v + 1]]:
                assert v in inst.edges[k][0]
        assert indptr[-1] == 2 * inst.m


class TestEvaluate:
    def test_ferromagnet(self):
        assert evaluate(ring(4), [1, 1, 1, 1]) == 4

    def test_single_antiferro_edge(self):
        assert evaluate(IsingInstance(2, [((0, 1), -1.0)]), [1, -1]) == 1

    def test_matches_naive_loop(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            n = 8
            terms = [(tuple(rng.choice(n, size=rng.integers(1, 4), replace=False)), rng.normal())
                     for _ in range(10)]
            inst = IsingInstance(n, terms, constant=0.5)
            x = spins(n, rng)
            assert evaluate(inst, x) == pytest.approx(oracles.energy(inst.edges, inst.constant, x))

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            evaluate(ring(4), [1, 1, 1])

    def test_non_spin_entries(self):
        with pytest.raises(ValueError):
            as_spins([1, 0, 1])

    def test_linearity_in_weights(self):
        rng = np.random.default_rng(0)
        a = IsingInstance(5, [((0, 1), 1.0), ((2, 3, 4), -2.0)], constant=1.0)
        b = IsingInstance(5, [((0, 1), 0.5), ((1, 2), 3.0)], constant=-1.0)
        both = IsingInstance(5, list(a.edges) + list(b.edges), a.constant + b.constant)
        for _ in range(10):
            x = spins(5, rng)
            assert evaluate(both, x) == pytest.approx(evaluate(a, x) + evaluate(b, x))

    def test_bit_conventions(self):
        assert list(spins_from_bits([0, 1, 1])) == [1, -1, -1]
        assert list(bits_from_spins([1, -1])) == [0, 1]
        assert list(spins_from_index(0b110, 3)) == [1, -1, -1]


class TestMaxCutForm:
    def test_bipartition_cuts_everything(self):
        assert evaluate(max_cut_form(ring(4)), [1, -1, 1, -1]) == 4

    def test_aligned_cuts_nothing(self):
        assert evaluate(max_cut_form(ring(4)), [1, 1, 1, 1]) == 0

    def test_rejects_hyperedges(self):
        with pytest.raises(ArityError):
            max_cut_form(IsingInstance(3, [((0, 1, 2), 1.0)]))

    def test_random_average_is_half(self):
        inst = ring(30)
        cut = max_cut_form(inst)
        rng = np.random.default_rng(11)
        samples = 10_000
        values = np.array([evaluate(cut, spins(30, rng)) for _ in range(samples)])
        sigma = math.sqrt(inst.m * 0.25 / samples)
        assert abs(values.mean() - inst.m / 2) < 3 * sigma


class TestGauge:
    def test_empty_mask(self):
        inst = ring(5, [1, -1, 1, 1, -1])
        assert apply_gauge(inst, []) == inst

    def test_single_vertex(self):
        g = apply_gauge(ring(4), [0])
        assert g.weight((0, 1)) == -1 and g.weight((0, 3)) == -1
        assert g.weight((1, 2)) == 1 and g.weight((2, 3)) == 1

    def test_invalid_vertex(self):
        with pytest.raises(ValueError):
            apply_gauge(ring(4), [4])

    @settings(max_examples=60, deadline=None)
    @given(instances(), st.data())
    def test_optimum_is_gauge_invariant(self, inst, data):
        L = data.draw(st.sets(st.integers(0, inst.n - 1)))
        expected = oracles.brute_max(inst.n, inst.edges, inst.constant)
        assert brute_force_max(apply_gauge(inst, L)).max_energy == pytest.approx(expected)

    @settings(max_examples=60, deadline=None)
    @given(instances(integer=False), st.data())
    def test_involution(self, inst, data):
        L = data.draw(st.sets(st.integers(0, inst.n - 1)))
        assert apply_gauge(apply_gauge(inst, L), L) == inst

    @settings(max_examples=40, deadline=None)
    @given(st.integers(3, 12), st.data())
    def test_ring_parity_invariant(self, n, data):
        J = data.draw(st.lists(st.sampled_from([1, -1]), min_size=n, max_size=n))
        L = data.draw(st.sets(st.integers(0, n - 1)))
        inst = ring(n, J)
        assert coupling_parity(apply_gauge(inst, L)) == coupling_parity(inst)


class TestParity:
    def test_all_plus(self):
        assert coupling_parity(ring(6)) == 1

    def test_one_negative(self):
        assert coupling_parity(ring(6, [1, 1, -1, 1, 1, 1])) == -1

    def test_non_unit_weight(self):
        with pytest.raises(ParityError):
            coupling_parity(ring(4, [1, 2, 1, 1]))


class TestBounds:
    @pytest.mark.parametrize("D,p,bip,expected", [(3, 2, False, 8), (3, 2, True, 6), (1, 1, False, 2)])
    def test_depth_bound(self, D, p, bip, expected):
        assert depth_bound(D, p, bip) == expected

    def test_expander_bound_values(self):
        assert corollary1_bound(3) == pytest.approx(5 / 6 + math.sqrt(2) / 9, abs=1e-15)
        assert corollary1_bound(4) == pytest.approx(0.97767, abs=1e-5)

    def test_expander_bound_decreases_to_five_sixths(self):
        values = np.array([corollary1_bound(D) for D in range(3, 1001)])
        assert np.all(np.diff(values) < 0)
        assert np.all(values > 5 / 6)
        assert values[-1] - 5 / 6 < 0.011

    def test_expander_bound_domain(self):
        with pytest.raises(ValueError):
            corollary1_bound(2)
