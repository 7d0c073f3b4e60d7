"""Per-prime obstruction analysis and independent re-validation of its output.

A prime gets a ``NonBlochKato`` verdict only with a witness attached: either a
degree-p cover whose central lift stays primitive (with a deck-orbit
certificate), or a p-power cover found by search whose lift violates the
Betti inequality.  Everything else is ``Inconclusive``; no report ever
claims the positive property.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .arrangement import ToricArrangement, check, is_central, is_essential, is_primitive
from .cohomology import (
    BettiInequality,
    DeckOrbit,
    betti_witness,
    lift_is_deck_invariant,
    orbit_witness,
    poincare,
)
from .covers import (
    build_p_cover,
    candidate_primes,
    deck_group,
    deck_translate,
    exceptional_primes,
    is_phi_p_surjective,
    is_prime,
    lift,
    sublattice_covers,
)
from .intlat import IntMatrix, content
from .layers import Layer, char_poly, layer_poset, zero_dim_layers
from .posets import NotPure, strictly_supersolvable, supersolvable

NON_BK = "NonBlochKato"
INCONCLUSIVE = "Inconclusive"
REQUIRED = ("central", "essential", "primitive", "supersolvable")


@dataclass(frozen=True)
class PrimeVerdict:
    p: int
    status: str
    cover: IntMatrix | None = None
    method: str | None = None
    witnesses: tuple[BettiInequality | DeckOrbit, ...] = ()
    reason: str | None = None

    def to_dict(self) -> dict[str, Any]:
        if self.status == INCONCLUSIVE:
            return {"p": self.p, "status": self.status, "reason": self.reason}
        return {
            "p": self.p,
            "status": self.status,
            "method": self.method,
            "cover": self.cover.tolist(),
            "degree": abs(self.cover.det()),
            "witnesses": [w.to_dict() for w in self.witnesses],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "PrimeVerdict":
        if data["status"] == INCONCLUSIVE:
            return cls(data["p"], INCONCLUSIVE, reason=data.get("reason"))
        cover = IntMatrix.of(data["cover"])
        return cls(
            data["p"],
            data["status"],
            cover,
            data.get("method"),
            tuple(_witness_from_dict(w, cover.nrows) for w in data.get("witnesses", [])),
        )


def _witness_from_dict(data: dict[str, Any], d: int):
    if data["kind"] == BettiInequality.kind:
        return BettiInequality(data["b1"], data["b2"])
    if data["kind"] == DeckOrbit.kind:
        orbit = tuple(Layer(IntMatrix.identity(d), tuple(Fraction(x) for x in psi)) for psi in data["orbit"])
        return DeckOrbit(IntMatrix.of(data["cover"]), orbit)
    raise ValueError(f"unknown witness kind {data['kind']!r}")


@dataclass(frozen=True)
class ObstructionReport:
    rank: int
    n: int
    flags: dict[str, bool]
    exceptional_primes: tuple[int, ...] | None
    verdicts: tuple[PrimeVerdict, ...]
    search_depth_used: int
    certificate: dict[str, Any] | None = field(default=None, compare=False)

    def verdict(self, p: int) -> PrimeVerdict:
        return next(v for v in self.verdicts if v.p == p)

    def to_dict(self) -> dict[str, Any]:
        return {
            "arrangement": {"rank": self.rank, "n": self.n, "flags": dict(self.flags)},
            "exceptional_primes": None if self.exceptional_primes is None else list(self.exceptional_primes),
            "verdicts": [v.to_dict() for v in self.verdicts],
            "search_depth_used": self.search_depth_used,
            "supersolvability_certificate": self.certificate,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ObstructionReport":
        arr = data["arrangement"]
        exc = data["exceptional_primes"]
        return cls(
            arr["rank"],
            arr["n"],
            dict(arr["flags"]),
            None if exc is None else tuple(exc),
            tuple(PrimeVerdict.from_dict(v) for v in data["verdicts"]),
            data["search_depth_used"],
            data.get("supersolvability_certificate"),
        )


def hypothesis_flags(arr: ToricArrangement):
    """Predicate flags plus the supersolvability certificate (or None)."""
    poset = layer_poset(arr).poset
    try:
        cert = supersolvable(poset)
        strict = strictly_supersolvable(poset)
    except NotPure:
        cert = strict = None
    flags = {
        "central": is_central(arr),
        "primitive": is_primitive(arr),
        "essential": is_essential(arr),
        "supersolvable": cert is not None,
        "strictly_supersolvable": strict is not None,
    }
    return flags, strict or cert


def _exceptional(arr: ToricArrangement, primes: Sequence[int]) -> tuple[int, ...] | None:
    if not is_primitive(arr):
        return None
    if arr.rank == 1:
        # every prime is exceptional in rank 1; report the requested ones
        return tuple(sorted(p for p in primes if is_phi_p_surjective(arr, p)))
    return tuple(exceptional_primes(arr))


def default_primes(arr: ToricArrangement) -> list[int]:
    """Primes that might be exceptional, plus the smallest one that is not."""
    d, n = arr.rank, len(arr)
    if d < 2:
        return [2]
    cands = candidate_primes(d, n)
    exc = set(exceptional_primes(arr)) if is_primitive(arr) else set(cands)
    p = 2
    while p in exc or not is_prime(p):
        p += 1
    return sorted(set(cands) | {p})


def _search(arr: ToricArrangement, p: int, depth: int) -> PrimeVerdict | None:
    for k in range(1, depth + 1):
        for m in sublattice_covers(arr.rank, p**k):
            w = betti_witness(poincare(char_poly(layer_poset(lift(arr, m))), arr.rank))
            if w is not None:
                return PrimeVerdict(p, NON_BK, m, "sublattice_search", (w,))
    return None


def _analyze_prime(arr: ToricArrangement, p: int, depth: int, unmet: list[str]) -> PrimeVerdict:
    if unmet:
        return PrimeVerdict(p, INCONCLUSIVE, reason="hypotheses unmet: " + ", ".join(unmet))
    if not is_phi_p_surjective(arr, p):
        m = build_p_cover(arr, p)
        witnesses = []
        orbit = orbit_witness(arr, m)
        if orbit is not None:
            witnesses.append(orbit)
        betti = betti_witness(poincare(char_poly(layer_poset(lift(arr, m))), arr.rank))
        if betti is not None:
            witnesses.append(betti)
        if witnesses:
            return PrimeVerdict(p, NON_BK, m, "primitive_p_cover", tuple(witnesses))
        return PrimeVerdict(p, INCONCLUSIVE, reason=f"degree-{p} cover {m} produced no witness")
    found = _search(arr, p, depth)
    if found is not None:
        return found
    return PrimeVerdict(p, INCONCLUSIVE, reason=f"phi_p surjective; search exhausted to depth {depth}")


def analyze(arr: ToricArrangement, primes: Sequence[int] | None = None, search_depth: int = 3) -> ObstructionReport:
    check(arr)
    if search_depth < 0:
        raise ValueError("search depth must be nonnegative")
    if primes is None:
        primes = default_primes(arr)
    primes = sorted(set(primes))
    bad = [p for p in primes if not is_prime(p)]
    if bad:
        raise ValueError(f"not prime: {bad}")
    flags, cert = hypothesis_flags(arr)
    unmet = [f for f in REQUIRED if not flags[f]]
    verdicts = tuple(_analyze_prime(arr, p, search_depth, unmet) for p in primes)
    return ObstructionReport(
        arr.rank,
        len(arr),
        flags,
        _exceptional(arr, primes),
        verdicts,
        search_depth,
        cert.to_dict() if cert is not None else None,
    )


# -- re-validation ----------------------------------------------------------------


def _is_power_of(n: int, p: int) -> bool:
    if n < p:
        return False
    while n % p == 0:
        n //= p
    return n == 1


def _verdict_problems(arr: ToricArrangement, v: PrimeVerdict, flags: dict[str, bool]) -> list[str]:
    tag = f"p={v.p}"
    if v.status == INCONCLUSIVE:
        return [] if v.reason else [f"{tag}: inconclusive verdict without a reason"]
    if v.status != NON_BK:
        return [f"{tag}: unknown status {v.status!r}"]
    unmet = [f for f in REQUIRED if not flags[f]]
    if unmet:
        return [f"{tag}: verdict despite unmet hypotheses {unmet}"]
    m = v.cover
    if m is None or m.nrows != arr.rank or m.ncols != arr.rank or m.det() == 0:
        return [f"{tag}: cover is not a nonsingular {arr.rank}x{arr.rank} matrix"]
    deg = abs(m.det())
    if not _is_power_of(deg, v.p):
        return [f"{tag}: cover degree {deg} is not a power of {v.p}"]
    if not v.witnesses:
        return [f"{tag}: no witness attached"]
    problems = []
    if v.method == "primitive_p_cover":
        if deg != v.p:
            problems.append(f"{tag}: primitive p-cover has degree {deg}")
        if any(content(m.apply(c)) != 1 for c in arr.characters):
            problems.append(f"{tag}: central lift is not primitive")
    lifted = lift(arr, m)
    if not is_primitive(lifted):
        problems.append(f"{tag}: lift is not primitive")
    lp = layer_poset(lifted)
    for w in v.witnesses:
        if isinstance(w, BettiInequality):
            pp = poincare(char_poly(lp), arr.rank)
            if (pp.b1, pp.b2) != (w.b1, w.b2):
                problems.append(f"{tag}: Betti numbers {(w.b1, w.b2)} do not match {(pp.b1, pp.b2)}")
            elif not w.is_valid():
                problems.append(f"{tag}: Betti inequality fails")
        elif isinstance(w, DeckOrbit):
            problems += [f"{tag}: {msg}" for msg in _orbit_problems(arr, m, w, lp)]
        else:
            problems.append(f"{tag}: unknown witness {w!r}")
    return problems


def _orbit_problems(arr, m, w: DeckOrbit, lp) -> list[str]:
    if w.cover != m:
        return ["orbit witness refers to a different cover"]
    if len(w.orbit) < 2:
        return [f"orbit of size {len(w.orbit)} is a singleton"]
    if not is_central(arr):
        return ["orbit witness on a non-central arrangement"]
    points = set(zero_dim_layers(lp))
    if not points.issuperset(w.orbit):
        return ["orbit contains something that is not a point of the lift"]
    group = deck_group(m)
    full = {deck_translate(w.orbit[0], u) for u in group.elements}
    if full != set(w.orbit):
        return ["listed points are not a full deck orbit"]
    if not lift_is_deck_invariant(arr, m):
        return ["lifted hypersurfaces are not deck invariant"]
    return []


def report_problems(arr: ToricArrangement, report: ObstructionReport | dict) -> list[str]:
    """Every reason the report fails independent re-checking (empty = valid)."""
    if isinstance(report, dict):
        report = ObstructionReport.from_dict(report)
    problems = []
    if (report.rank, report.n) != (arr.rank, len(arr)):
        problems.append("report describes a different arrangement")
        return problems
    flags, _ = hypothesis_flags(arr)
    if flags != report.flags:
        problems.append(f"flags {report.flags} do not match recomputed {flags}")
    primes = [v.p for v in report.verdicts]
    if len(set(primes)) != len(primes) or not all(is_prime(p) for p in primes):
        problems.append(f"verdict primes {primes} are not distinct primes")
        return problems
    if report.exceptional_primes != _exceptional(arr, primes):
        problems.append("exceptional primes do not match recomputation")
    for v in report.verdicts:
        problems += _verdict_problems(arr, v, flags)
    return problems


def verify_report(arr: ToricArrangement, report: ObstructionReport | dict) -> bool:
    return not report_problems(arr, report)
