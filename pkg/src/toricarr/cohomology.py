"""Combinatorial shadows of the cohomology of the complement.

Nothing here builds the cohomology ring.  We read Betti numbers off the
characteristic polynomial, produce one-sided certificates that the ring is
not generated in degree one, and enumerate the index sets that label its
generators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .arrangement import ToricArrangement, is_central, is_essential, is_primitive
from .covers import deck_group, lift, lift_origins, orbits_on, translate_hypersurface
from .intlat import IntMatrix, rank
from .layers import Layer, components, containing, is_layer_of, layer_poset, zero_dim_layers


@dataclass(frozen=True)
class PoincarePolynomial:
    """Betti numbers ``b_0 .. b_d`` of the complement."""

    coefficients: tuple[int, ...]

    def betti(self, k: int) -> int:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else 0

    @property
    def b1(self) -> int:
        return self.betti(1)

    @property
    def b2(self) -> int:
        return self.betti(2)

    def __str__(self) -> str:
        terms = [f"{c}t^{k}" if k else str(c) for k, c in enumerate(self.coefficients) if c]
        return " + ".join(terms) or "0"


def poincare(q: Sequence[int], d: int) -> PoincarePolynomial:
    """Expand ``(-t)^d q(-(t+1)/t)`` for ``q`` given constant-first."""
    if len(q) > d + 1:
        raise ValueError(f"characteristic polynomial has degree above {d}")
    out = [0] * (d + 1)
    for k, c in enumerate(q):
        if not c:
            continue
        # c t^k contributes c (-1)^(d+k) t^(d-k) (t+1)^k
        sign = -1 if (d + k) % 2 else 1
        for j in range(k + 1):
            out[d - k + j] += sign * c * comb(k, j)
    if any(x < 0 for x in out):
        raise ValueError(f"negative Betti number in {out}: not the characteristic polynomial of an arrangement")
    return PoincarePolynomial(tuple(out))


# -- witnesses ---------------------------------------------------------------------


@dataclass(frozen=True)
class BettiInequality:
    """``b2 > C(b1, 2)``: degree-one classes cannot span degree two."""

    b1: int
    b2: int
    kind = "betti_inequality"

    @property
    def justification(self) -> str:
        return f"b2 = {self.b2} > {comb(self.b1, 2)} = C({self.b1}, 2)"

    def is_valid(self) -> bool:
        return self.b2 > comb(self.b1, 2)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "b1": self.b1, "b2": self.b2, "justification": self.justification}


@dataclass(frozen=True)
class DeckOrbit:
    """A nonsingleton deck orbit of points of a lifted arrangement."""

    cover: IntMatrix
    orbit: tuple[Layer, ...]
    kind = "deck_orbit"

    @property
    def justification(self) -> str:
        return f"deck group of order {abs(self.cover.det())} moves a point through an orbit of size {len(self.orbit)}"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "cover": self.cover.tolist(),
            "orbit": [[str(x) for x in layer.psi] for layer in self.orbit],
            "justification": self.justification,
        }


NonGenerationWitness = BettiInequality | DeckOrbit


def betti_witness(p: PoincarePolynomial) -> BettiInequality | None:
    """Witness when ``b2 > C(b1, 2)``.  None proves nothing."""
    w = BettiInequality(p.b1, p.b2)
    return w if w.is_valid() else None


class HypothesisError(ValueError):
    def __init__(self, hypothesis: str, message: str):
        self.hypothesis = hypothesis
        super().__init__(message)


def lift_is_deck_invariant(arr: ToricArrangement, m: IntMatrix) -> bool:
    """Every deck transformation permutes the lifted pieces of each hypersurface."""
    lifted = lift(arr, m)
    origin = lift_origins(arr, m)
    groups: dict[int, set] = {}
    for h, i in zip(lifted.hypersurfaces, origin):
        groups.setdefault(i, set()).add(h)
    for u in deck_group(m).elements:
        for hs in groups.values():
            if {translate_hypersurface(h, u) for h in hs} != hs:
                return False
    return True


def orbit_witness(arr: ToricArrangement, m: IntMatrix) -> DeckOrbit | None:
    """Deck orbit of points of ``lift(arr, m)`` with more than one element.

    Prefers the orbit through the origin, i.e. the fiber over the identity.
    """
    if not is_central(arr):
        raise HypothesisError("central", "orbit witness needs a central arrangement")
    if not is_essential(arr):
        raise HypothesisError("essential", "orbit witness needs an essential arrangement")
    if not is_primitive(arr):
        raise HypothesisError("primitive", "orbit witness needs a primitive arrangement")
    if not lift_is_deck_invariant(arr, m):
        raise HypothesisError("invariant", "a lifted hypersurface is not deck invariant")
    points = zero_dim_layers(layer_poset(lift(arr, m)))
    orbits = [o for o in orbits_on(points, deck_group(m)) if len(o) > 1]
    if not orbits:
        return None
    origin = Layer(IntMatrix.identity(arr.rank), (Fraction(0),) * arr.rank)
    best = next((o for o in orbits if origin in o), orbits[0])
    return DeckOrbit(m, tuple(best))


# -- generators ----------------------------------------------------------------------


def _independent(chars: Sequence[Sequence[int]], idx: Sequence[int]) -> bool:
    if not idx:
        return True
    d = len(chars[idx[0]])
    return rank(IntMatrix(tuple(tuple(chars[i]) for i in idx), d)) == len(idx)


def _circuit_through(chars, indep: tuple[int, ...], i: int) -> tuple[int, ...]:
    """The unique circuit in ``indep + {i}``, assuming that set is dependent."""
    whole = tuple(sorted(indep + (i,)))
    return tuple(a for a in whole if a == i or _independent(chars, [b for b in whole if b != a]))


def nbc_sets(characters: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Independent index sets containing no broken circuit, ordered by size then lexicographically.

    A broken circuit is a circuit minus its smallest index.
    """
    chars = [tuple(c) for c in characters]
    n = len(chars)
    out = []
    for k in range(n + 1):
        found = False
        for a in itertools.combinations(range(n), k):
            if not _independent(chars, a):
                continue
            broken = False
            for i in range(n):
                if i in a or _independent(chars, tuple(sorted(a + (i,)))):
                    continue
                if min(_circuit_through(chars, a, i)) == i:
                    broken = True
                    break
            if not broken:
                out.append(a)
                found = True
        if not found:
            break
    return out


@dataclass(frozen=True)
class AdaptedPair:
    a: tuple[int, ...]
    b: tuple[int, ...]
    sign: int

    @property
    def degree(self) -> int:
        return len(self.a) + len(self.b)


def _shuffle_sign(a: Sequence[int], b: Sequence[int]) -> int:
    inversions = sum(1 for x in a for y in b if x > y)
    return -1 if inversions % 2 else 1


def adapted_pairs(arr: ToricArrangement, w: Layer) -> list[AdaptedPair]:
    """Pairs ``(A, B)`` with ``w`` a component of the ``A``-intersection and ``A + B`` independent."""
    if not is_layer_of(arr, w):
        raise ValueError("not a layer of this arrangement")
    chars = arr.characters
    through = containing(arr, w)
    out = []
    for a in itertools.combinations(through, w.codim):
        if not _independent(chars, a) or w not in components(arr, a):
            continue
        rest = [i for i in range(len(arr)) if i not in a]
        for k in range(len(rest) + 1):
            for b in itertools.combinations(rest, k):
                if _independent(chars, tuple(sorted(a + b))):
                    out.append(AdaptedPair(a, b, _shuffle_sign(a, b)))
    return sorted(out, key=lambda x: (x.degree, x.a, x.b))
