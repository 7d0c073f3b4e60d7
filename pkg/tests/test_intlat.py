from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_torsion, elementary_divisors, leibniz_det
from toricarr.intlat import (
    IntMatrix,
    complete_to_unimodular,
    content,
    express,
    hnf,
    hnf_basis,
    inverse_unimodular,
    saturate,
    saturation_index,
    snf,
    torsion_kernel,
)

entries = st.integers(-6, 6)


def matrices(min_rows=1, max_rows=4, min_cols=1, max_cols=4):
    return st.integers(min_rows, max_rows).flatmap(
        lambda r: st.integers(min_cols, max_cols).flatmap(
            lambda c: st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r).map(IntMatrix.of)
        )
    )


def square(max_n=4):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n).map(IntMatrix.of)
    )


def is_hnf(h: IntMatrix) -> bool:
    last = -1
    seen_zero = False
    for r in h.rows:
        if not any(r):
            seen_zero = True
            continue
        if seen_zero:
            return False
        col = next(j for j, x in enumerate(r) if x)
        if col <= last or r[col] <= 0:
            return False
        for above in h.rows[: h.rows.index(r)]:
            if not 0 <= above[col] < r[col]:
                return False
        last = col
    return True


def same_row_lattice(a: IntMatrix, b: IntMatrix) -> bool:
    ba, bb = hnf_basis(a), hnf_basis(b)
    return all(express(r, bb) is not None for r in a.rows) and all(express(r, ba) is not None for r in b.rows)


class TestExamples:
    def test_hnf_identity(self):
        hf = hnf(IntMatrix.identity(2))
        assert hf.h == IntMatrix.identity(2) and hf.u == IntMatrix.identity(2)

    def test_hnf_cover_matrix(self):
        hf = hnf(IntMatrix.of([[2, 1], [0, -4]]))
        assert hf.h.tolist() == [[2, 1], [0, 4]]
        assert hf.u @ IntMatrix.of([[2, 1], [0, -4]]) == hf.h

    def test_hnf_zero_row(self):
        assert hnf(IntMatrix.of([[0, 0]])).h.tolist() == [[0, 0]]

    def test_snf_cover_matrix(self):
        assert snf(IntMatrix.of([[2, 1], [0, -4]])).diagonal == (1, 8)

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_snf_diag_p(self, p):
        assert snf(IntMatrix.diag([p, 1])).diagonal == (1, p)

    def test_snf_zero(self):
        assert snf(IntMatrix.of([[0, 0], [0, 0]])).diagonal == (0, 0)

    @pytest.mark.parametrize("v, c", [((2, 0), 2), ((1, -4), 1), ((0, 0), 0), ((-6, 9), 3)])
    def test_content(self, v, c):
        assert content(v) == c

    def test_saturate_examples(self):
        assert saturate(IntMatrix.of([[2, 0]])).tolist() == [[1, 0]]
        assert saturate(IntMatrix.identity(2)) == IntMatrix.identity(2)
        braid_rows = IntMatrix.of([[1, -1, 0], [0, 1, -1]])
        assert saturation_index(braid_rows) == 1
        assert same_row_lattice(saturate(braid_rows), braid_rows)

    def test_complete_examples(self):
        assert complete_to_unimodular((1, 0)) == IntMatrix.identity(2)
        for v in [(1, 2), (0, 1)]:
            u = complete_to_unimodular(v)
            assert u.apply(v) == (1, 0)
            assert abs(u.det()) == 1

    def test_complete_rejects_imprimitive(self):
        with pytest.raises(ValueError):
            complete_to_unimodular((2, 4))

    def test_torsion_examples(self):
        assert torsion_kernel(IntMatrix.diag([3, 1])) == [(Fraction(k, 3), Fraction(0)) for k in range(3)]
        assert torsion_kernel(IntMatrix.identity(2)) == [(Fraction(0), Fraction(0))]
        a_t = IntMatrix.of([[2, 1], [0, -4]]).T
        kernel = torsion_kernel(a_t)
        assert len(kernel) == 8
        # cyclic: some element has order 8
        orders = [max(x.denominator for x in u) for u in kernel]
        assert 8 in orders

    def test_torsion_rejects_singular(self):
        with pytest.raises(ValueError):
            torsion_kernel(IntMatrix.of([[1, 2], [2, 4]]))
        with pytest.raises(ValueError):
            torsion_kernel(IntMatrix.of([[1, 2]]))

    def test_str_round_trip(self):
        assert str(IntMatrix.of([[2, 1], [0, -4]])) == "2,1;0,-4"


class TestProperties:
    @given(matrices())
    def test_hnf(self, m):
        hf = hnf(m)
        assert hf.u @ m == hf.h
        assert abs(hf.u.det()) == 1
        assert is_hnf(hf.h)
        assert same_row_lattice(hf.h, m)

    @given(matrices(max_rows=3, max_cols=3))
    def test_snf_matches_minors(self, m):
        sf = snf(m)
        assert sf.u @ m @ sf.v == sf.s
        assert abs(sf.u.det()) == 1 and abs(sf.v.det()) == 1
        diag = sf.diagonal
        assert all(x >= 0 for x in diag)
        assert all(b % a == 0 if a else b == 0 for a, b in zip(diag, diag[1:]))
        assert list(diag) == elementary_divisors(m.tolist())
        # off-diagonal entries vanish
        assert all(x == 0 for i, r in enumerate(sf.s.rows) for j, x in enumerate(r) if i != j)

    @given(square())
    def test_det(self, m):
        assert m.det() == leibniz_det(m.tolist())

    @given(matrices())
    def test_saturate(self, m):
        s = saturate(m)
        assert saturate(s) == s
        assert saturation_index(s) == 1
        coords = [express(r, s) for r in m.rows]
        assert all(c is not None for c in coords)
        if s.nrows:
            index = 1
            for e in elementary_divisors([list(c) for c in coords]):
                index *= e
            assert index == saturation_index(m)

    @given(st.lists(entries, min_size=1, max_size=6).filter(lambda v: content(v) == 1))
    def test_complete_to_unimodular(self, v):
        u = complete_to_unimodular(v)
        assert u.apply(v) == (1,) + (0,) * (len(v) - 1)
        assert abs(u.det()) == 1
        assert inverse_unimodular(u) @ u == IntMatrix.identity(len(v))

    @settings(max_examples=60, deadline=None)
    @given(square(3).filter(lambda m: m.det() != 0 and abs(m.det()) ** m.nrows <= 2000))
    def test_torsion_kernel(self, m):
        kernel = torsion_kernel(m)
        assert len(kernel) == abs(m.det())
        assert kernel == brute_torsion(m.tolist())
        group = set(kernel)
        for a in kernel:
            for b in kernel:
                assert tuple((x + y) % 1 for x, y in zip(a, b)) in group
