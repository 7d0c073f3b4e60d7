"""Toric arrangements: characters with root-of-unity offsets."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .intlat import IntMatrix, content, express, rank, saturate


class InvalidArrangement(ValueError):
    """Raised when an arrangement breaks a data-model invariant."""

    def __init__(self, errors: Sequence[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


@dataclass(frozen=True)
class Hypersurface:
    """The level set ``chi(t) = exp(2 pi i * offset)``."""

    character: tuple[int, ...]
    offset: Fraction = Fraction(0)

    @classmethod
    def of(cls, character: Iterable[int], offset=0) -> "Hypersurface":
        return cls(tuple(int(x) for x in character), Fraction(offset))


@dataclass(frozen=True)
class ToricArrangement:
    """An ordered list of hypersurfaces in the rank-``rank`` torus.

    Order matters: it is the ground order used for no-broken-circuit sets.
    Construction does not validate; call :func:`validate` or :func:`check`.
    """

    rank: int
    hypersurfaces: tuple[Hypersurface, ...]

    @classmethod
    def central(cls, characters: Iterable[Iterable[int]], rank: int | None = None) -> "ToricArrangement":
        hs = tuple(Hypersurface.of(c) for c in characters)
        if rank is None:
            if not hs:
                raise ValueError("rank is required for an empty arrangement")
            rank = len(hs[0].character)
        return cls(rank, hs)

    @property
    def characters(self) -> list[tuple[int, ...]]:
        return [h.character for h in self.hypersurfaces]

    @property
    def offsets(self) -> list[Fraction]:
        return [h.offset for h in self.hypersurfaces]

    def __len__(self) -> int:
        return len(self.hypersurfaces)

    def character_matrix(self) -> IntMatrix:
        return IntMatrix(tuple(self.characters), self.rank)


def validate(arr: ToricArrangement) -> list[str]:
    """Every invariant violation, as human-readable strings (empty = ok)."""
    errors = []
    if arr.rank < 0:
        errors.append(f"negative rank {arr.rank}")
    seen = set()
    for i, h in enumerate(arr.hypersurfaces):
        if len(h.character) != arr.rank:
            errors.append(f"hypersurface {i}: dimension mismatch ({len(h.character)} != {arr.rank})")
        elif not any(h.character):
            errors.append(f"hypersurface {i}: zero character")
        if not isinstance(h.offset, Fraction) or not 0 <= h.offset < 1:
            errors.append(f"hypersurface {i}: unreduced offset {h.offset}")
        key = (h.character, h.offset)
        if key in seen:
            errors.append(f"hypersurface {i}: duplicate of an earlier hypersurface")
        seen.add(key)
    return errors


def check(arr: ToricArrangement) -> ToricArrangement:
    errors = validate(arr)
    if errors:
        raise InvalidArrangement(errors)
    return arr


def braid(n: int) -> ToricArrangement:
    """Type A toric braid arrangement, characters ``e_i - e_j`` for ``i < j``."""
    if n < 2:
        raise ValueError("braid arrangement needs n >= 2")
    chars = []
    for i in range(n):
        for j in range(i + 1, n):
            v = [0] * n
            v[i], v[j] = 1, -1
            chars.append(v)
    return ToricArrangement.central(chars, n)


def is_central(arr: ToricArrangement) -> bool:
    return all(h.offset == 0 for h in arr.hypersurfaces)


def is_primitive(arr: ToricArrangement) -> bool:
    return all(content(c) == 1 for c in arr.characters)


def is_essential(arr: ToricArrangement) -> bool:
    if not arr.hypersurfaces:
        return arr.rank == 0
    return rank(arr.character_matrix()) == arr.rank


def essentialize(arr: ToricArrangement) -> tuple[ToricArrangement, IntMatrix]:
    """Rewrite a central arrangement in a basis of its saturated span.

    Returns the essential arrangement and the basis (rows in ``Z^d``) its
    coordinates refer to.
    """
    if not is_central(arr):
        raise ValueError("essentialize requires a central arrangement")
    if not arr.hypersurfaces:
        return ToricArrangement(0, ()), IntMatrix((), arr.rank)
    basis = saturate(arr.character_matrix())
    chars = [express(c, basis) for c in arr.characters]
    return ToricArrangement.central(chars, basis.nrows), basis


# -- JSON -----------------------------------------------------------------

_OFFSET = re.compile(r"^(0|[1-9][0-9]*/[1-9][0-9]*)$")


def parse_offset(text: str) -> Fraction:
    if not isinstance(text, str) or not _OFFSET.match(text):
        raise InvalidArrangement([f"offset {text!r} is not of the form 'p/q' or '0'"])
    if text == "0":
        return Fraction(0)
    p, q = (int(x) for x in text.split("/"))
    value = Fraction(p, q)
    if value.numerator != p or value.denominator != q:
        raise InvalidArrangement([f"offset {text!r} is not a reduced fraction"])
    if not 0 <= value < 1:
        raise InvalidArrangement([f"offset {text!r} is not in [0, 1)"])
    return value


def format_offset(x: Fraction) -> str:
    return "0" if x == 0 else f"{x.numerator}/{x.denominator}"


def to_dict(arr: ToricArrangement) -> dict[str, Any]:
    return {
        "rank": arr.rank,
        "hypersurfaces": [
            {"character": list(h.character), "offset": format_offset(h.offset)}
            for h in arr.hypersurfaces
        ],
    }


def from_dict(data: Any) -> ToricArrangement:
    if not isinstance(data, dict) or "rank" not in data or "hypersurfaces" not in data:
        raise InvalidArrangement(["expected an object with 'rank' and 'hypersurfaces'"])
    d = data["rank"]
    if not isinstance(d, int) or isinstance(d, bool):
        raise InvalidArrangement(["rank must be an integer"])
    hs = []
    for i, h in enumerate(data["hypersurfaces"]):
        try:
            char = h["character"]
        except (TypeError, KeyError):
            raise InvalidArrangement([f"hypersurface {i}: missing 'character'"]) from None
        if not isinstance(char, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in char):
            raise InvalidArrangement([f"hypersurface {i}: character must be a list of integers"])
        hs.append(Hypersurface(tuple(char), parse_offset(h.get("offset", "0"))))
    return check(ToricArrangement(d, tuple(hs)))


def loads(text: str) -> ToricArrangement:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidArrangement([f"malformed JSON: {exc}"]) from None
    return from_dict(data)


def dumps(arr: ToricArrangement) -> str:
    return json.dumps(to_dict(arr))
