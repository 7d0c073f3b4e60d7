"""Layers of a toric arrangement and the poset they form.

A layer is a coset of a subtorus.  We name it by the saturated lattice
``gamma`` of characters that are constant on it (row-HNF) together with the
values ``psi`` those basis characters take there, as fractions mod 1.  The
pair is canonical, so layers compare by plain equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .arrangement import Hypersurface, ToricArrangement
from .intlat import IntMatrix, express, saturate, snf
from .posets import FinitePoset


@dataclass(frozen=True, order=True)
class Layer:
    gamma: IntMatrix
    psi: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.psi) != self.gamma.nrows:
            raise ValueError("psi needs one value per row of gamma")

    @classmethod
    def ambient(cls, d: int) -> "Layer":
        return cls(IntMatrix((), d), ())

    @property
    def rank(self) -> int:
        """Rank of the ambient torus."""
        return self.gamma.ncols

    @property
    def codim(self) -> int:
        return self.gamma.nrows

    @property
    def dim(self) -> int:
        return self.gamma.ncols - self.gamma.nrows

    def sort_key(self):
        return (self.codim, self.gamma.rows, self.psi)

    def value(self, chi: Sequence[int]) -> Fraction | None:
        """The constant value of ``chi`` on the layer, or None if it varies."""
        if self.codim == 0:
            return Fraction(0) if not any(chi) else None
        coeffs = express(chi, self.gamma)
        if coeffs is None:
            return None
        return sum((c * v for c, v in zip(coeffs, self.psi)), Fraction(0)) % 1

    def equations(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return list(zip(self.gamma.rows, self.psi))


def _solve(equations: Sequence[tuple[Sequence[int], Fraction]], d: int) -> list[Layer]:
    """Connected components of ``{t : <chi, t> = r mod 1 for each (chi, r)}``."""
    if not equations:
        return [Layer.ambient(d)]
    chars = IntMatrix(tuple(tuple(c) for c, _ in equations), d)
    offsets = [Fraction(r) for _, r in equations]
    basis = saturate(chars)
    k = basis.nrows
    # each equation rewritten over the saturated basis: C psi = r (mod 1)
    coeffs = IntMatrix(tuple(express(c, basis) for c in chars.rows), k)
    sf = snf(coeffs)
    rhs = [sum((a * r for a, r in zip(row, offsets)), Fraction(0)) for row in sf.u.rows]
    if any(x % 1 for x in rhs[k:]):
        return []
    diag = sf.diagonal[:k]
    out = set()
    for shifts in itertools.product(*(range(s) for s in diag)):
        phi = [(rhs[i] + shifts[i]) / diag[i] for i in range(k)]
        psi = tuple(sum((a * f for a, f in zip(row, phi)), Fraction(0)) % 1 for row in sf.v.rows)
        out.add(Layer(basis, psi))
    return sorted(out, key=Layer.sort_key)


def components(arr: ToricArrangement, subset: Iterable[int]) -> list[Layer]:
    """Connected components of the intersection of the indexed hypersurfaces."""
    hs = [arr.hypersurfaces[i] for i in subset]
    return _solve([(h.character, h.offset) for h in hs], arr.rank)


def intersect(layer: Layer, h: Hypersurface) -> list[Layer]:
    return _solve(layer.equations() + [(h.character, h.offset)], layer.rank)


def contains(h: Hypersurface, layer: Layer) -> bool:
    """True iff the hypersurface contains the layer."""
    return layer.value(h.character) == h.offset % 1


def layer_leq(l1: Layer, l2: Layer) -> bool:
    """``l1 <= l2`` in the poset of layers, i.e. ``l1`` contains ``l2``."""
    if l1.rank != l2.rank:
        raise ValueError("layers live in tori of different rank")
    return all(l2.value(g) == v for g, v in l1.equations())


@dataclass(frozen=True, eq=False)
class LayerPoset:
    rank: int
    layers: tuple[Layer, ...]
    poset: FinitePoset

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(layer.dim for layer in self.layers)

    @property
    def bottom(self) -> int:
        return 0

    def leq(self, i: int, j: int) -> bool:
        return self.poset.leq[i][j]

    @cached_property
    def _index(self) -> dict[Layer, int]:
        return {layer: i for i, layer in enumerate(self.layers)}

    def index(self, layer: Layer) -> int:
        return self._index[layer]

    def __contains__(self, layer: Layer) -> bool:
        return layer in self._index

    def __len__(self) -> int:
        return len(self.layers)


def _by_subsets(arr: ToricArrangement) -> set[Layer]:
    found: set[Layer] = set()
    for k in range(len(arr) + 1):
        for s in itertools.combinations(range(len(arr)), k):
            found.update(components(arr, s))
    return found


def _by_closure(arr: ToricArrangement) -> set[Layer]:
    start = Layer.ambient(arr.rank)
    found = {start}
    todo = [start]
    while todo:
        layer = todo.pop()
        for h in arr.hypersurfaces:
            if contains(h, layer):
                continue
            for new in intersect(layer, h):
                if new not in found:
                    found.add(new)
                    todo.append(new)
    return found


def layer_poset(arr: ToricArrangement, method: str = "closure") -> LayerPoset:
    """All layers ordered by reverse inclusion; index 0 is the ambient torus.

    ``method="subsets"`` intersects every subset of hypersurfaces (the
    reference enumeration); the default grows layers one hypersurface at a
    time and yields the same poset.
    """
    if method == "closure":
        found = _by_closure(arr)
    elif method == "subsets":
        found = _by_subsets(arr)
    else:
        raise ValueError(f"unknown method {method!r}")
    layers = tuple(sorted(found, key=Layer.sort_key))
    return LayerPoset(arr.rank, layers, FinitePoset.from_elements(layers, layer_leq))


def char_poly(lp: LayerPoset) -> list[int]:
    """Coefficients (constant first) of ``sum_W mu(0, W) t^dim W``."""
    coeffs = [0] * (lp.rank + 1)
    for mu, dim in zip(lp.poset.mobius_from_bottom, lp.dims):
        coeffs[dim] += mu
    return coeffs


def zero_dim_layers(lp: LayerPoset) -> list[Layer]:
    return [layer for layer in lp.layers if layer.dim == 0]


def containing(arr: ToricArrangement, layer: Layer) -> list[int]:
    """Indices of the hypersurfaces that contain ``layer``."""
    return [i for i, h in enumerate(arr.hypersurfaces) if contains(h, layer)]


def is_layer_of(arr: ToricArrangement, layer: Layer) -> bool:
    # a layer is a component of the intersection of everything through it
    if layer.rank != arr.rank:
        return False
    return layer in components(arr, containing(arr, layer))


def localize(arr: ToricArrangement, layer: Layer) -> list[tuple[int, ...]]:
    """Characters of the hypersurfaces through ``layer``, in arrangement order."""
    if not is_layer_of(arr, layer):
        raise ValueError("not a layer of this arrangement")
    return [arr.hypersurfaces[i].character for i in containing(arr, layer)]
