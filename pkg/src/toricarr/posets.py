"""Finite posets: Möbius function, joins, M/TM-ideals, supersolvability.

Elements are the integers ``0..n-1``; ``leq[i][j]`` is True iff ``i <= j``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Hashable, Iterable, Sequence


class NotPure(ValueError):
    pass


class NotAnIdeal(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FinitePoset:
    leq: tuple[tuple[bool, ...], ...]
    labels: tuple[Hashable, ...] = field(default=())

    @classmethod
    def from_relation(cls, n: int, rel, labels: Sequence[Hashable] = ()) -> "FinitePoset":
        return cls(tuple(tuple(bool(rel(i, j)) for j in range(n)) for i in range(n)), tuple(labels))

    @classmethod
    def from_elements(cls, elements: Sequence[Any], rel) -> "FinitePoset":
        n = len(elements)
        return cls(
            tuple(tuple(bool(rel(elements[i], elements[j])) for j in range(n)) for i in range(n)),
            tuple(elements),
        )

    @property
    def size(self) -> int:
        return len(self.leq)

    def __len__(self) -> int:
        return self.size

    def lt(self, i: int, j: int) -> bool:
        return i != j and self.leq[i][j]

    def is_partial_order(self) -> bool:
        n, r = self.size, self.leq
        for i in range(n):
            if not r[i][i]:
                return False
            for j in range(n):
                if i != j and r[i][j] and r[j][i]:
                    return False
                if r[i][j]:
                    for k in range(n):
                        if r[j][k] and not r[i][k]:
                            return False
        return True

    @cached_property
    def up(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(j for j in range(self.size) if self.leq[i][j]) for i in range(self.size))

    @cached_property
    def down(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(j for j in range(self.size) if self.leq[j][i]) for i in range(self.size))

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.minimal(self.up[i] - {i})) for i in range(self.size))

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        low: list[list[int]] = [[] for _ in range(self.size)]
        for i, ups in enumerate(self.upper_covers):
            for j in ups:
                low[j].append(i)
        return tuple(tuple(sorted(x)) for x in low)

    @cached_property
    def linear_extension(self) -> tuple[int, ...]:
        return tuple(sorted(range(self.size), key=lambda i: (len(self.down[i]), i)))

    @cached_property
    def height(self) -> tuple[int, ...]:
        """Length of the longest chain ending at each element."""
        h = [0] * self.size
        for j in self.linear_extension:
            h[j] = max((h[i] + 1 for i in self.lower_covers[j]), default=0)
        return tuple(h)

    @cached_property
    def short_height(self) -> tuple[int, ...]:
        """Length of the shortest maximal chain ending at each element."""
        h = [0] * self.size
        for j in self.linear_extension:
            h[j] = min((h[i] + 1 for i in self.lower_covers[j]), default=0)
        return tuple(h)

    @cached_property
    def length(self) -> int:
        return max(self.height, default=0)

    @cached_property
    def bottom(self) -> int | None:
        mins = [i for i in range(self.size) if len(self.down[i]) == 1]
        if len(mins) == 1 and len(self.up[mins[0]]) == self.size:
            return mins[0]
        return None

    @cached_property
    def atoms(self) -> tuple[int, ...]:
        b = self.bottom
        if b is None:
            return ()
        return self.upper_covers[b]

    @cached_property
    def mobius_from_bottom(self) -> tuple[int, ...]:
        b = self.bottom
        if b is None:
            raise ValueError("poset has no unique minimum")
        return tuple(mobius_row(self, b)[i] for i in range(self.size))

    def is_pure(self) -> bool:
        return _pure(self, range(self.size))

    def maximal(self, subset: Iterable[int]) -> list[int]:
        s = set(subset)
        return sorted(x for x in s if not (self.up[x] - {x}) & s)

    def minimal(self, subset: Iterable[int]) -> list[int]:
        s = set(subset)
        return sorted(x for x in s if not (self.down[x] - {x}) & s)


def mobius_row(p: FinitePoset, x: int) -> dict[int, int]:
    """``mu(x, y)`` for every ``y >= x``."""
    mu: dict[int, int] = {}
    for y in p.linear_extension:
        if not p.leq[x][y]:
            continue
        mu[y] = 1 if y == x else -sum(mu[z] for z in p.down[y] if z != y and z in mu)
    return mu


def mobius(p: FinitePoset, x: int, y: int) -> int:
    if not p.leq[x][y]:
        raise ValueError(f"{x} is not below {y}")
    return mobius_row(p, x)[y]


def min_upper_bounds(p: FinitePoset, x: int, y: int) -> frozenset[int]:
    return frozenset(p.minimal(p.up[x] & p.up[y]))


def is_lattice(p: FinitePoset) -> bool:
    n = p.size
    for x in range(n):
        for y in range(x + 1, n):
            if len(min_upper_bounds(p, x, y)) != 1:
                return False
            if len(p.maximal(p.down[x] & p.down[y])) != 1:
                return False
    return True


def is_order_ideal(p: FinitePoset, subset: Iterable[int]) -> bool:
    s = set(subset)
    return all(p.down[x] <= s for x in s)


def _pure(p: FinitePoset, subset: Iterable[int]) -> bool:
    tops = p.maximal(subset)
    lengths = {p.height[m] for m in tops} | {p.short_height[m] for m in tops}
    return len(lengths) <= 1


def _ideal_atoms(p: FinitePoset, ideal: frozenset[int]) -> frozenset[int]:
    return frozenset(a for a in p.atoms if a in ideal)


def _check_ideal(p: FinitePoset, ideal: Iterable[int], ambient: Iterable[int] | None) -> tuple[frozenset[int], frozenset[int]]:
    s = frozenset(ideal)
    amb = frozenset(range(p.size)) if ambient is None else frozenset(ambient)
    if p.bottom is None or p.bottom not in s or not is_order_ideal(p, s):
        raise NotAnIdeal("not an order ideal containing the bottom element")
    if not s <= amb or not is_order_ideal(p, amb):
        raise NotAnIdeal("ambient must be an order ideal containing the ideal")
    return s, amb


def is_M_ideal(p: FinitePoset, ideal: Iterable[int], ambient: Iterable[int] | None = None) -> bool:
    """M-ideal test, relative to the order ideal ``ambient`` (default: all).

    Joins inside an order ideal are the global joins that land in it, so the
    relative test only filters by ``ambient``.
    """
    s, amb = _check_ideal(p, ideal, ambient)
    if not _pure(p, s):
        return False
    for x, y in itertools.combinations(sorted(s), 2):
        if not (min_upper_bounds(p, x, y) & amb) <= s:
            return False
    inside = _ideal_atoms(p, s)
    outside = [a for a in p.atoms if a in amb and a not in s]
    for a1, a2 in itertools.combinations(outside, 2):
        for x in min_upper_bounds(p, a1, a2) & amb:
            if not any(p.lt(a3, x) for a3 in inside):
                return False
    return True


def is_TM_ideal(p: FinitePoset, ideal: Iterable[int], ambient: Iterable[int] | None = None) -> bool:
    s, amb = _check_ideal(p, ideal, ambient)
    if not is_M_ideal(p, s, amb):
        return False
    outside = [a for a in p.atoms if a in amb and a not in s]
    return all(len(min_upper_bounds(p, y, a) & amb) == 1 for y in s for a in outside)


@dataclass(frozen=True)
class SupersolvabilityCertificate:
    chain: tuple[frozenset[int], ...]
    flags: tuple[tuple[bool, bool], ...]  # (is_M, is_TM) per ideal
    strict: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "strict": self.strict,
            "chain": [sorted(i) for i in self.chain],
            "flags": [{"M": m, "TM": tm} for m, tm in self.flags],
        }


def _atom_generated(p: FinitePoset) -> bool:
    """Every element above an atom is a minimal upper bound of a lower cover
    and an atom.  Layer posets and geometric lattices have this property,
    and then a join-closed order ideal is determined by its atoms."""
    atoms = set(p.atoms)
    for x in range(p.size):
        if p.height[x] < 2:
            continue
        below = [a for a in atoms if p.leq[a][x]]
        if not any(
            x in min_upper_bounds(p, y, a)
            for y in p.lower_covers[x]
            for a in below
            if not p.leq[a][y]
        ):
            return False
    return True


def _closure(p: FinitePoset, atoms: Iterable[int], within: frozenset[int]) -> frozenset[int]:
    """Smallest order ideal containing ``atoms`` that is join-closed in ``within``."""
    s = {p.bottom, *atoms}
    while True:
        grown = set(s)
        for x in s:
            grown |= p.down[x]
        for x, y in itertools.combinations(sorted(grown), 2):
            grown |= min_upper_bounds(p, x, y) & within
        if grown == s:
            return frozenset(s)
        s = grown


def _ideal_length(p: FinitePoset, ideal: frozenset[int]) -> int:
    return max(p.height[x] for x in ideal)


def _candidates_by_atoms(p, level, parent, memo):
    parent_atoms = sorted(_ideal_atoms(p, parent))
    for k in range(len(parent_atoms) - 1, 0, -1):
        for subset in itertools.combinations(parent_atoms, k):
            atoms = frozenset(subset)
            key = (atoms, parent)
            if key not in memo:
                ideal = _closure(p, subset, parent)
                memo[key] = ideal if _ideal_atoms(p, ideal) == atoms else None
            ideal = memo[key]
            if ideal is not None and ideal < parent and _ideal_length(p, ideal) == level:
                yield ideal


def _candidates_by_antichains(p, level, parent, memo):
    rank_i = [x for x in sorted(parent) if p.height[x] == level]
    for k in range(len(rank_i), 0, -1):
        for subset in itertools.combinations(rank_i, k):
            ideal = frozenset().union(*(p.down[x] for x in subset))
            if ideal < parent:
                yield ideal


def _search(p: FinitePoset, strict: bool) -> SupersolvabilityCertificate | None:
    if p.bottom is None:
        raise ValueError("supersolvability needs a unique bottom element")
    if not p.is_pure():
        raise NotPure("poset is not pure")
    d = p.length
    top = frozenset(range(p.size))
    if d == 0:
        return SupersolvabilityCertificate((), (), strict)
    gen = _candidates_by_atoms if _atom_generated(p) else _candidates_by_antichains
    memo: dict = {}
    verdicts: dict[tuple[frozenset[int], frozenset[int]], tuple[bool, bool]] = {}

    def flags(ideal, parent):
        key = (ideal, parent)
        if key not in verdicts:
            m = is_M_ideal(p, ideal, parent)
            verdicts[key] = (m, m and is_TM_ideal(p, ideal, parent))
        return verdicts[key]

    def ok(ideal, parent):
        m, tm = flags(ideal, parent)
        return tm if strict else m

    if not ok(top, top):
        return None

    def dfs(level, parent):
        if level == 0:
            return []
        for ideal in gen(p, level, parent, memo):
            if ok(ideal, parent):
                rest = dfs(level - 1, ideal)
                if rest is not None:
                    return rest + [ideal]
        return None

    below = dfs(d - 1, top)
    if below is None:
        return None
    chain = tuple(below) + (top,)
    fl = tuple(flags(i, j) for i, j in zip(chain, chain[1:] + (top,)))
    return SupersolvabilityCertificate(chain, fl, all(tm for _, tm in fl))


def supersolvable(p: FinitePoset) -> SupersolvabilityCertificate | None:
    """A chain ``I_1 < ... < I_d = P`` with ``I_i`` of length i, each an
    M-ideal of the next one."""
    return _search(p, strict=False)


def strictly_supersolvable(p: FinitePoset) -> SupersolvabilityCertificate | None:
    return _search(p, strict=True)


def check_certificate(p: FinitePoset, cert: SupersolvabilityCertificate) -> bool:
    """Re-validate a certificate from scratch."""
    d = p.length
    if len(cert.chain) != d:
        return False
    if d and cert.chain[-1] != frozenset(range(p.size)):
        return False
    parents = cert.chain[1:] + cert.chain[-1:]
    for i, (ideal, parent) in enumerate(zip(cert.chain, parents), start=1):
        if not ideal <= parent:
            return False
        try:
            if not is_M_ideal(p, ideal, parent):
                return False
            if cert.strict and not is_TM_ideal(p, ideal, parent):
                return False
        except NotAnIdeal:
            return False
        if _ideal_length(p, ideal) != i:
            return False
    return True


def set_partitions(n: int) -> list[tuple[tuple[int, ...], ...]]:
    """All set partitions of ``{0..n-1}`` as sorted tuples of sorted blocks."""
    out: list[list[list[int]]] = [[]]
    for x in range(n):
        nxt = []
        for part in out:
            for b in range(len(part)):
                nxt.append([blk + [x] if k == b else blk for k, blk in enumerate(part)])
            nxt.append(part + [[x]])
        out = nxt
    return sorted(tuple(sorted(tuple(b) for b in part)) for part in out)


def _refines(a, b) -> bool:
    owner = {x: k for k, blk in enumerate(b) for x in blk}
    return all(len({owner[x] for x in blk}) == 1 for blk in a)


def partition_lattice(n: int) -> FinitePoset:
    """Set partitions of ``{1..n}`` ordered by refinement (finer is lower)."""
    if n < 1:
        raise ValueError("n must be positive")
    parts = sorted(set_partitions(n), key=lambda s: (-len(s), s))
    return FinitePoset.from_elements(parts, _refines)


def _signature(p: FinitePoset) -> list[tuple]:
    mu = p.mobius_from_bottom if p.bottom is not None else (None,) * p.size
    return [
        (p.height[i], len(p.down[i]), len(p.up[i]), len(p.lower_covers[i]), len(p.upper_covers[i]), mu[i])
        for i in range(p.size)
    ]


def isomorphic(p: FinitePoset, q: FinitePoset) -> tuple[int, ...] | None:
    """An order isomorphism as a tuple ``f`` with ``f[i]`` in ``q``, or None."""
    if p.size != q.size:
        return None
    sp, sq = _signature(p), _signature(q)
    if Counter(sp) != Counter(sq):
        return None
    candidates = {i: [j for j in range(q.size) if sq[j] == sp[i]] for i in range(p.size)}
    order = sorted(range(p.size), key=lambda i: (p.height[i], len(candidates[i]), i))
    image = [-1] * p.size
    used = [False] * q.size

    def consistent(i, j):
        for k in order:
            jk = image[k]
            if jk < 0:
                continue
            if p.leq[k][i] != q.leq[jk][j] or p.leq[i][k] != q.leq[j][jk]:
                return False
        return True

    def extend(pos):
        if pos == len(order):
            return True
        i = order[pos]
        for j in candidates[i]:
            if not used[j] and consistent(i, j):
                image[i], used[j] = j, True
                if extend(pos + 1):
                    return True
                image[i], used[j] = -1, False
        return False

    return tuple(image) if extend(0) else None

