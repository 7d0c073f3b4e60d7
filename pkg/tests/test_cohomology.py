from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fixtures import A, B3E, B4E, THREE_LINES
from oracles import nbc_brute, whitney_numbers
from toricarr.arrangement import Hypersurface, ToricArrangement, braid
from toricarr.cohomology import (
    AdaptedPair,
    BettiInequality,
    HypothesisError,
    PoincarePolynomial,
    adapted_pairs,
    betti_witness,
    lift_is_deck_invariant,
    nbc_sets,
    orbit_witness,
    poincare,
)
from toricarr.covers import build_p_cover, lift
from toricarr.intlat import IntMatrix
from toricarr.layers import Layer, char_poly, layer_poset, localize, zero_dim_layers


class TestPoincare:
    def test_lift_example(self):
        assert poincare([16, -4, 1], 2).coefficients == (1, 6, 21)

    @pytest.mark.parametrize("d", range(0, 6))
    def test_torus(self, d):
        assert poincare([0] * d + [1], d).coefficients == tuple(comb(d, k) for k in range(d + 1))

    def test_b3e(self):
        assert poincare([2, -3, 1], 2).coefficients == (1, 5, 6)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            poincare([5, 1], 1)

    def test_rejects_high_degree(self):
        with pytest.raises(ValueError):
            poincare([0, 0, 1], 1)


class TestBetti:
    def test_fires(self):
        w = betti_witness(PoincarePolynomial((1, 6, 21)))
        assert w == BettiInequality(6, 21)
        assert "21 > 15" in w.justification

    def test_b3e_silent(self):
        assert betti_witness(PoincarePolynomial((1, 5, 6))) is None

    @pytest.mark.parametrize("d", range(0, 6))
    def test_torus_silent(self, d):
        assert betti_witness(poincare([0] * d + [1], d)) is None


class TestOrbit:
    def test_cover_a(self):
        w = orbit_witness(B3E, A)
        assert len(w.orbit) == 8
        assert all(layer.dim == 0 for layer in w.orbit)

    def test_degree_3(self):
        w = orbit_witness(B3E, build_p_cover(B3E, 3))
        assert len(w.orbit) == 3

    def test_identity(self):
        assert orbit_witness(B3E, IntMatrix.identity(2)) is None

    @pytest.mark.parametrize(
        "arr, hypothesis",
        [
            (ToricArrangement(2, (Hypersurface.of((1, 0), Fraction(1, 2)), Hypersurface.of((0, 1)))), "central"),
            (ToricArrangement.central([(1, 0)]), "essential"),
            (ToricArrangement.central([(2, 0), (0, 1)]), "primitive"),
        ],
    )
    def test_hypotheses(self, arr, hypothesis):
        with pytest.raises(HypothesisError) as info:
            orbit_witness(arr, IntMatrix.diag([3, 1]))
        assert info.value.hypothesis == hypothesis

    def test_invariance(self):
        for m in (A, IntMatrix.diag([2, 2]), IntMatrix.of([[1, 1], [-1, 1]])):
            assert lift_is_deck_invariant(B3E, m)

    @pytest.mark.parametrize("arr", [B3E, B4E, THREE_LINES], ids=["b3e", "b4e", "three_lines"])
    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_every_p_cover(self, arr, p):
        m = build_p_cover(arr, p)
        if m is None:
            pytest.skip("phi_p surjective")
        w = orbit_witness(arr, m)
        assert w is not None and len(w.orbit) == p


class TestWitnessAgreement:
    @pytest.mark.xfail(strict=True, reason="degree-3 cover of B3e: orbit witness but b2 = 10 = C(5, 2)")
    def test_betti_whenever_orbit(self):
        for arr in (B3E, B4E, THREE_LINES):
            for p in (2, 3, 5, 7):
                m = build_p_cover(arr, p)
                if m is None or orbit_witness(arr, m) is None:
                    continue
                assert betti_witness(poincare(char_poly(layer_poset(lift(arr, m))), arr.rank)) is not None

    def test_counterexample(self):
        m = build_p_cover(B3E, 3)
        assert orbit_witness(B3E, m) is not None
        pp = poincare(char_poly(layer_poset(lift(B3E, m))), 2)
        assert pp.coefficients == (1, 5, 10)
        assert betti_witness(pp) is None

    @pytest.mark.parametrize("p, b2", [(5, 14), (7, 18)])
    def test_agreement_at_larger_primes(self, p, b2):
        m = build_p_cover(B3E, p)
        pp = poincare(char_poly(layer_poset(lift(B3E, m))), 2)
        assert pp.coefficients == (1, 5, b2)
        assert betti_witness(pp) is not None


class TestNbc:
    def test_b3e_point(self):
        assert nbc_sets([(1, 0), (0, 1), (1, 1)]) == [(), (0,), (1,), (2,), (0, 1), (0, 2)]

    def test_empty(self):
        assert nbc_sets([]) == [()]

    def test_broken_circuit_not_adjacent_to_minimum(self):
        # circuit {1, 2, 3} breaks to {2, 3}, so {0, 2, 3} is not nbc
        chars = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 1, 1)]
        sets = nbc_sets(chars)
        assert (0, 2, 3) not in sets
        assert sets == nbc_brute(chars)

    def test_size_two_matches_mobius(self):
        top = [s for s in nbc_sets(B3E.characters) if len(s) == 2]
        assert len(top) == abs(layer_poset(B3E).poset.mobius_from_bottom[-1]) == 2

    @pytest.mark.parametrize("arr", [THREE_LINES, B3E, B4E, lift(B3E, A)], ids=["three_lines", "b3e", "b4e", "lift"])
    def test_whitney(self, arr):
        for pt in zero_dim_layers(layer_poset(arr)):
            local = localize(arr, pt)
            counts = [0] * (arr.rank + 1)
            for s in nbc_sets(local):
                counts[len(s)] += 1
            assert counts == whitney_numbers(local)

    def test_braid5_whitney(self):
        # the localized lattice at a point of essentialized braid(5) is the partition lattice of 5
        chars = braid(5).characters
        counts = [0] * 5
        for s in nbc_sets(chars):
            counts[len(s)] += 1
        assert counts == [1, 10, 35, 50, 24]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-2, 2), min_size=3, max_size=3).filter(any), min_size=0, max_size=5))
def test_nbc_against_brute_force(chars):
    chars = [tuple(c) for c in chars]
    assert nbc_sets(chars) == nbc_brute(chars)
    counts = {}
    for s in nbc_sets(chars):
        counts[len(s)] = counts.get(len(s), 0) + 1
    if chars:
        assert [counts.get(k, 0) for k in range(len(whitney_numbers(chars)))] == whitney_numbers(chars)


class TestAdaptedPairs:
    def test_b3e_point(self):
        point = zero_dim_layers(layer_poset(B3E))[0]
        top = [(x.a, x.b) for x in adapted_pairs(B3E, point) if x.degree == 2 and not x.b]
        assert top == [((0, 1), ()), ((0, 2), ()), ((1, 2), ())]
        assert all(x.degree == 2 for x in adapted_pairs(B3E, point))

    def test_ambient(self):
        lp = layer_poset(B3E)
        pairs = adapted_pairs(B3E, lp.layers[0])
        assert all(x.a == () for x in pairs)
        assert [x.b for x in pairs] == [(), (0,), (1,), (2,), (0, 1), (0, 2), (1, 2)]

    def test_hypersurface_layer(self):
        lp = layer_poset(B3E)
        for i, layer in enumerate(lp.layers):
            if layer.dim == 1:
                pairs = adapted_pairs(B3E, layer)
                (h,) = {x.a for x in pairs}
                assert len(h) == 1
                assert AdaptedPair(h, (), 1) in pairs
                assert len(pairs) == 3

    def test_sign(self):
        lp = layer_poset(B3E)
        h3 = next(layer for layer in lp.layers if layer.dim == 1 and layer.value((1, 1)) == 0)
        pairs = {(x.a, x.b): x.sign for x in adapted_pairs(B3E, h3)}
        assert pairs[((2,), (0,))] == -1
        assert pairs[((2,), ())] == 1

    def test_not_a_layer(self):
        with pytest.raises(ValueError):
            adapted_pairs(B3E, Layer(IntMatrix.identity(2), (Fraction(1, 2), Fraction(0))))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=2, max_size=2).filter(any).map(tuple), min_size=1, max_size=4, unique=True))
def test_poincare_nonnegative(chars):
    arr = ToricArrangement.central(chars, 2)
    pp = poincare(char_poly(layer_poset(arr)), 2)
    assert pp.coefficients[0] == 1
    assert all(x >= 0 for x in pp.coefficients)
