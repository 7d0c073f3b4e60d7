"""Exact integer linear algebra over lattices.

Everything here works on Python ints and :class:`fractions.Fraction`, so
there is no overflow and no rounding.  Vectors are columns; matrices are
stored row-major in :class:`IntMatrix`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

IntVector = tuple[int, ...]
TorsionVector = tuple[Fraction, ...]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix.

    ``ncols`` is stored explicitly so that matrices with zero rows still know
    their width (an empty equation system in ``Z^d`` is a ``0 x d`` matrix).
    """

    rows: tuple[IntVector, ...]
    ncols: int

    def __post_init__(self):
        if self.ncols < 0:
            raise ValueError("negative column count")
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError(f"row {r} does not have {self.ncols} entries")

    @classmethod
    def of(cls, rows: Iterable[Iterable[int]], ncols: int | None = None) -> "IntMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(rows[0])
        return cls(rows, ncols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def diag(cls, entries: Sequence[int]) -> "IntMatrix":
        n = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def T(self) -> "IntMatrix":
        if not self.rows:
            return IntMatrix(tuple(() for _ in range(self.ncols)), 0)
        return IntMatrix(tuple(tuple(c) for c in zip(*self.rows)), self.nrows)

    def column(self, j: int) -> IntVector:
        return tuple(r[j] for r in self.rows)

    def apply(self, v: Sequence[int]) -> IntVector:
        """Matrix-vector product ``self @ v``."""
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        cols = [other.column(j) for j in range(other.ncols)]
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows),
            other.ncols,
        )

    def det(self) -> int:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        return det(self.rows)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __str__(self) -> str:
        return ";".join(",".join(str(x) for x in r) for r in self.rows)


@dataclass(frozen=True)
class HermiteForm:
    h: IntMatrix
    u: IntMatrix


@dataclass(frozen=True)
class SmithForm:
    u: IntMatrix
    s: IntMatrix
    v: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        k = min(self.s.shape)
        return tuple(self.s.rows[i][i] for i in range(k))

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x)


def det(rows: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _as_lists(m: IntMatrix) -> list[list[int]]:
    return [list(r) for r in m.rows]


def _freeze(a: list[list[int]], ncols: int) -> IntMatrix:
    return IntMatrix(tuple(tuple(r) for r in a), ncols)


def _eye(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def hnf(m: IntMatrix) -> HermiteForm:
    """Row-style Hermite normal form with ``u @ m == h``.

    Pivots are positive, entries above a pivot lie in ``[0, pivot)`` and zero
    rows sit at the bottom.  Two matrices have the same row lattice iff their
    nonzero HNF rows coincide.
    """
    a = _as_lists(m)
    n, c = m.nrows, m.ncols
    u = _eye(n)
    r = 0
    for col in range(c):
        if r == n:
            break
        while True:
            live = [i for i in range(r, n) if a[i][col]]
            if not live:
                break
            i0 = min(live, key=lambda i: (abs(a[i][col]), i))
            if i0 != r:
                a[r], a[i0] = a[i0], a[r]
                u[r], u[i0] = u[i0], u[r]
            done = True
            for i in range(r + 1, n):
                if a[i][col]:
                    q = a[i][col] // a[r][col]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if a[i][col]:
                        done = False
            if done:
                break
        if a[r][col] == 0:
            continue
        if a[r][col] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = a[i][col] // a[r][col]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return HermiteForm(_freeze(a, c), _freeze(u, n))


def snf(m: IntMatrix) -> SmithForm:
    """Smith normal form ``u @ m @ v == s`` with a divisibility chain."""
    a = _as_lists(m)
    n, c = m.nrows, m.ncols
    u, v = _eye(n), _eye(c)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    t = 0
    while t < min(n, c):
        entries = [(abs(a[i][j]), i, j) for i in range(t, n) for j in range(t, c) if a[i][j]]
        if not entries:
            break
        _, i0, j0 = min(entries)
        if i0 != t:
            swap_rows(t, i0)
        if j0 != t:
            swap_cols(t, j0)
        p = a[t][t]
        dirty = False
        for i in range(t + 1, n):
            if a[i][t]:
                add_row(i, t, -(a[i][t] // p))
                dirty = dirty or a[i][t] != 0
        for j in range(t + 1, c):
            if a[t][j]:
                add_col(j, t, -(a[t][j] // p))
                dirty = dirty or a[t][j] != 0
        if dirty:
            continue
        bad = next(
            (i for i in range(t + 1, n) for j in range(t + 1, c) if a[i][j] % p),
            None,
        )
        if bad is not None:
            add_row(t, bad, 1)
            continue
        if p < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return SmithForm(_freeze(u, n), _freeze(a, c), _freeze(v, c))


def content(v: Sequence[int]) -> int:
    """gcd of the entries; 0 only for the zero vector."""
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    n = m.nrows
    if n != m.ncols:
        raise ValueError("not square")
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m.rows)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col]), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    out = []
    for r in a:
        tail = r[n:]
        if any(x.denominator != 1 for x in tail):
            raise ValueError("matrix is not unimodular")
        out.append(tuple(int(x) for x in tail))
    return IntMatrix(tuple(out), n)


def saturate(basis: IntMatrix) -> IntMatrix:
    """HNF basis of all integer vectors in the rational row span of ``basis``."""
    sf = snf(basis)
    r = sf.rank
    vinv = inverse_unimodular(sf.v)
    return hnf_basis(IntMatrix(vinv.rows[:r], basis.ncols))


def hnf_basis(m: IntMatrix) -> IntMatrix:
    """Nonzero rows of the HNF: the canonical basis of the row lattice."""
    h = hnf(m).h
    return IntMatrix(tuple(r for r in h.rows if any(r)), m.ncols)


def saturation_index(basis: IntMatrix) -> int:
    """Index of the row lattice of ``basis`` in its saturation."""
    out = 1
    for x in snf(basis).diagonal:
        if x:
            out *= x
    return out


def rank(m: IntMatrix) -> int:
    return snf(m).rank


def express(v: Sequence[int], basis: IntMatrix) -> IntVector | None:
    """Integer coefficients ``c`` with ``sum c_j basis_j == v``, or None.

    ``basis`` must be in row-HNF with no zero rows, so the pivots give a
    triangular system.
    """
    res = list(v)
    coeffs = []
    for row in basis.rows:
        col = next(j for j, x in enumerate(row) if x)
        q, rem = divmod(res[col], row[col])
        if rem:
            return None
        coeffs.append(q)
        if q:
            res = [x - q * y for x, y in zip(res, row)]
    if any(res):
        return None
    return tuple(coeffs)


def complete_to_unimodular(v: Sequence[int]) -> IntMatrix:
    """A unimodular ``U`` with ``U @ v == e_1``; ``v`` must be primitive."""
    if content(v) != 1:
        raise ValueError(f"{tuple(v)} is not primitive")
    return hnf(IntMatrix(tuple((x,) for x in v), 1)).u


def torsion_kernel(m: IntMatrix) -> list[TorsionVector]:
    """All ``u`` in ``(Q/Z)^d`` with ``m @ u = 0 mod 1``, sorted."""
    if m.nrows != m.ncols:
        raise ValueError("torsion_kernel needs a square matrix")
    sf = snf(m)
    diag = sf.diagonal
    if any(x == 0 for x in diag):
        raise ValueError("singular matrix has an infinite kernel")
    out = set()
    for ks in itertools.product(*(range(s) for s in diag)):
        w = [Fraction(k, s) for k, s in zip(ks, diag)]
        out.add(tuple((sum(a * b for a, b in zip(row, w))) % 1 for row in sf.v.rows))
    return sorted(out)
