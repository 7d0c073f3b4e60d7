"""Finite covers of tori and what they do to arrangements.

A cover is a nonsingular integer matrix ``m``.  Characters pull back as
``chi -> m @ chi``, so points of the covering torus push forward by ``m.T``
and the deck group is the torsion kernel of ``m.T``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .arrangement import Hypersurface, ToricArrangement, is_central, is_essential, is_primitive
from .intlat import IntMatrix, TorsionVector, complete_to_unimodular, content, torsion_kernel
from .layers import Layer


def check_cover(m: IntMatrix, rank: int | None = None) -> IntMatrix:
    if m.nrows != m.ncols:
        raise ValueError(f"cover matrix must be square, got {m.nrows}x{m.ncols}")
    if rank is not None and m.nrows != rank:
        raise ValueError(f"cover matrix is {m.nrows}x{m.ncols} but the torus has rank {rank}")
    if m.det() == 0:
        raise ValueError("cover matrix is singular")
    return m


def degree(m: IntMatrix) -> int:
    return abs(check_cover(m).det())


_MATRIX = re.compile(r"^\s*-?\d+(\s*,\s*-?\d+)*(\s*;\s*-?\d+(\s*,\s*-?\d+)*)*\s*$")


def parse_matrix(text: str) -> IntMatrix:
    """Parse ``"2,1;0,-4"`` (rows split by ``;``, entries by ``,``)."""
    if not _MATRIX.match(text):
        raise ValueError(f"cannot parse matrix {text!r}")
    rows = [[int(x) for x in row.split(",")] for row in text.split(";")]
    if len({len(r) for r in rows}) != 1:
        raise ValueError(f"ragged matrix {text!r}")
    return IntMatrix.of(rows)


# -- lifting ----------------------------------------------------------------


def lift_central(arr: ToricArrangement, m: IntMatrix) -> ToricArrangement:
    """Central arrangement of the pulled-back characters ``m @ chi`` (may be imprimitive)."""
    if not is_central(arr):
        raise ValueError("lift_central requires a central arrangement")
    check_cover(m, arr.rank)
    return ToricArrangement.central([m.apply(c) for c in arr.characters], arr.rank)


def lift(arr: ToricArrangement, m: IntMatrix) -> ToricArrangement:
    """Preimage arrangement, split into primitive hypersurfaces.

    ``m @ chi = a * chi'`` with ``chi'`` primitive, so the preimage of
    ``chi = r`` is the union of ``chi' = (r + k) / a`` for ``k < a``.
    """
    check_cover(m, arr.rank)
    out = []
    for h in arr.hypersurfaces:
        pulled = m.apply(h.character)
        a = content(pulled)
        prim = tuple(x // a for x in pulled)
        out.extend(Hypersurface(prim, (h.offset + k) / a % 1) for k in range(a))
    return ToricArrangement(arr.rank, tuple(out))


def lift_origins(arr: ToricArrangement, m: IntMatrix) -> list[int]:
    """For each hypersurface of ``lift(arr, m)``, the index of the one it lies over."""
    out = []
    for i, h in enumerate(arr.hypersurfaces):
        out.extend([i] * content(m.apply(h.character)))
    return out


# -- deck group ---------------------------------------------------------------


@dataclass(frozen=True)
class DeckGroup:
    cover: IntMatrix
    elements: tuple[TorsionVector, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, u) -> bool:
        return tuple(Fraction(x) % 1 for x in u) in set(self.elements)


def deck_group(m: IntMatrix) -> DeckGroup:
    check_cover(m)
    return DeckGroup(m, tuple(torsion_kernel(m.T)))


def deck_translate(layer: Layer, u: Sequence[Fraction], group: DeckGroup | None = None) -> Layer:
    """Translate a layer of the covering torus by the torsion point ``u``."""
    if group is not None and u not in group:
        raise ValueError(f"{tuple(u)} is not a deck transformation")
    if len(u) != layer.rank:
        raise ValueError("translation has the wrong dimension")
    shift = [sum((g * x for g, x in zip(row, u)), Fraction(0)) for row in layer.gamma.rows]
    return Layer(layer.gamma, tuple((v + s) % 1 for v, s in zip(layer.psi, shift)))


def translate_hypersurface(h: Hypersurface, u: Sequence[Fraction]) -> Hypersurface:
    shift = sum((c * x for c, x in zip(h.character, u)), Fraction(0))
    return Hypersurface(h.character, (h.offset - shift) % 1)


def orbits_on(layers: Sequence[Layer], group: DeckGroup) -> list[list[Layer]]:
    """Orbits of the deck group, in order of first appearance in ``layers``."""
    pending = list(dict.fromkeys(layers))
    known = set(pending)
    seen: set[Layer] = set()
    out = []
    for layer in pending:
        if layer in seen:
            continue
        orbit = sorted({deck_translate(layer, u) for u in group.elements}, key=Layer.sort_key)
        if not known.issuperset(orbit):
            raise ValueError("layer set is not closed under the deck group")
        seen.update(orbit)
        out.append(orbit)
    return out


# -- the phi_p criterion -----------------------------------------------------------


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % q for q in range(2, int(n**0.5) + 1))


def primes_up_to(n: int) -> list[int]:
    return [q for q in range(2, n + 1) if is_prime(q)]


def n_lines(p: int, d: int) -> int:
    """Number of lines through the origin in ``F_p^d``."""
    return (p**d - 1) // (p - 1)


@dataclass(frozen=True, order=True)
class ProjPoint:
    """A line in ``F_p^d``, stored by its representative with leading entry 1."""

    p: int
    coords: tuple[int, ...]

    @classmethod
    def of(cls, v: Sequence[int], p: int) -> "ProjPoint":
        red = [x % p for x in v]
        lead = next((x for x in red if x), None)
        if lead is None:
            raise ValueError(f"{tuple(v)} vanishes mod {p}")
        inv = pow(lead, -1, p)
        return cls(p, tuple(x * inv % p for x in red))


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def phi_p(arr: ToricArrangement, p: int) -> list[ProjPoint]:
    """The line spanned by each character mod p, in arrangement order."""
    _check_prime(p)
    if not is_primitive(arr):
        raise ValueError("phi_p requires a primitive arrangement")
    return [ProjPoint.of(c, p) for c in arr.characters]


def is_phi_p_surjective(arr: ToricArrangement, p: int) -> bool:
    return len(set(phi_p(arr, p))) == n_lines(p, arr.rank)


def all_lines(p: int, d: int) -> Iterator[ProjPoint]:
    """Every line of ``F_p^d``, lexicographic in the normalised representative."""
    for lead in range(d - 1, -1, -1):
        for tail in itertools.product(range(p), repeat=d - lead - 1):
            yield ProjPoint(p, (0,) * lead + (1,) + tail)


def missed_line(arr: ToricArrangement, p: int) -> ProjPoint | None:
    image = set(phi_p(arr, p))
    return next((v for v in all_lines(p, arr.rank) if v not in image), None)


def build_p_cover(arr: ToricArrangement, p: int) -> IntMatrix | None:
    """A degree-p cover whose central lift stays primitive, or None if none exists."""
    if not is_essential(arr):
        raise ValueError("build_p_cover requires an essential arrangement")
    v = missed_line(arr, p)
    if v is None:
        return None
    u = complete_to_unimodular(v.coords)
    m = IntMatrix.diag([p] + [1] * (arr.rank - 1)) @ u
    bad = [c for c in arr.characters if content(m.apply(c)) != 1]
    if bad:
        raise AssertionError(f"degree-{p} cover {m} leaves imprimitive characters {bad}")
    return m


def exceptional_primes(arr: ToricArrangement) -> list[int]:
    """All primes with phi_p surjective, sorted.

    Only primes with ``n_lines(p, d) <= len(arr)`` can qualify.  In rank 1
    every prime does, so the set is infinite and this raises.
    """
    if not is_primitive(arr):
        raise ValueError("exceptional_primes requires a primitive arrangement")
    d, n = arr.rank, len(arr)
    if d == 0 or n == 0:
        return []
    if d == 1:
        raise ValueError("in rank 1 every prime is exceptional")
    return [p for p in candidate_primes(d, n) if is_phi_p_surjective(arr, p)]


def candidate_primes(d: int, n: int) -> list[int]:
    """Primes p with ``n_lines(p, d) <= n`` (needs d >= 2)."""
    out = []
    p = 2
    while n_lines(p, d) <= n:
        if is_prime(p):
            out.append(p)
        p += 1
    return out


# -- sublattices -------------------------------------------------------------------


def _ordered_factorizations(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Tuples of k positive ints with product n, descending lexicographic."""
    if k == 1:
        yield (n,)
        return
    for a in sorted((a for a in range(1, n + 1) if n % a == 0), reverse=True):
        for rest in _ordered_factorizations(n // a, k - 1):
            yield (a,) + rest


def sublattice_covers(d: int, det: int) -> Iterator[IntMatrix]:
    """Every d x d row-HNF matrix of determinant ``det``, each exactly once.

    These are the index-``det`` sublattices of ``Z^d``; entries above the
    diagonal in column j range over ``[0, a_j)``.
    """
    if det < 1:
        raise ValueError("determinant must be positive")
    if d < 1:
        raise ValueError("rank must be positive")
    slots = [(i, j) for i in range(d) for j in range(i + 1, d)]
    for diag in _ordered_factorizations(det, d):
        for vals in itertools.product(*(range(diag[j]) for _, j in slots)):
            rows = [[diag[i] if i == j else 0 for j in range(d)] for i in range(d)]
            for (i, j), x in zip(slots, vals):
                rows[i][j] = x
            yield IntMatrix.of(rows)
