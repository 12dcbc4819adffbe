"""Moebius function, Eulerian and thinness tests, reduced Euler
characteristic, and the Hall-identity sweep that ties them together.

Values are exact Python integers throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import SimplicialComplex, order_complex
from .poset import IntervalSpec, Poset, interval


class MissingBounds(ValueError):
    """The poset lacks a unique minimal or maximal element."""


@dataclass
class MobiusTable:
    """Moebius values on all comparable pairs (x, y) with x <= y."""

    values: dict[tuple[str, str], int]

    def __getitem__(self, pair):
        return self.values[tuple(pair)]

    def __contains__(self, pair):
        return tuple(pair) in self.values

    def items(self):
        return self.values.items()


def mobius(P: Poset) -> MobiusTable:
    """Tabulate mu by the defining recursion: mu(x, x) = 1 and
    mu(x, y) = -sum of mu(x, z) over x <= z < y."""
    values: dict[tuple[str, str], int] = {}
    by_rank = sorted(P.elements, key=lambda e: (P.rank[e], e))
    for x in P.elements:
        ups = [z for z in by_rank if P.leq(x, z)]
        for y in ups:
            if y == x:
                values[(x, x)] = 1
                continue
            s = 0
            for z in ups:
                if z != y and P.leq(z, y):
                    s += values[(x, z)]
            values[(x, y)] = -s
    return MobiusTable(values)


@dataclass
class EulerianVerdict:
    ok: bool
    witness: tuple[str, str, int, int] | None = None  # (x, y, mu, expected)

    def __bool__(self):
        return self.ok


def is_eulerian(P: Poset) -> EulerianVerdict:
    """Check mu(x, y) = (-1)**(rank difference) on every comparable pair.

    The sign depends only on the parity of the rank difference, so the
    conventional exponent and the exponent shifted by two agree.
    """
    if P.bottom() is None or P.top() is None:
        raise MissingBounds("the Eulerian test needs unique minimal and maximal elements")
    table = mobius(P)
    for (x, y), mu in sorted(table.items()):
        expected = -1 if (P.rank[y] - P.rank[x]) % 2 else 1
        if mu != expected:
            return EulerianVerdict(False, (x, y, mu, expected))
    return EulerianVerdict(True)


@dataclass
class ThinVerdict:
    ok: bool
    violations: tuple[tuple[str, str, tuple[str, ...]], ...] = ()

    def __bool__(self):
        return self.ok


def is_thin(P: Poset) -> ThinVerdict:
    """Every open interval of rank difference two must have exactly two
    elements; all violating intervals are reported."""
    bad = []
    for x in P.elements:
        for y in P.elements:
            if P.rank[y] - P.rank[x] == 2 and P.lt(x, y):
                mid = P.strictly_between(x, y)
                if len(mid) != 2:
                    bad.append((x, y, mid))
    return ThinVerdict(not bad, tuple(bad))


def reduced_euler_characteristic(K: SimplicialComplex) -> int:
    """Alternating face count including the empty face, so the empty
    complex scores -1 and a point scores 0."""
    chi = -1
    for m in K.face_masks():
        if m:
            chi += -1 if (m.bit_count() - 1) % 2 else 1
    return chi


def hall_identity_violations(P: Poset) -> tuple[tuple[str, str, int, int], ...]:
    """Compare mu(x, y) with the reduced Euler characteristic of the open
    interval's order complex on every strict pair; return mismatches as
    (x, y, mu, chi)."""
    table = mobius(P)
    bad = []
    for x, y in sorted(P.comparable_pairs()):
        K = order_complex(interval(P, IntervalSpec(x, y, "open")))
        chi = reduced_euler_characteristic(K)
        if chi != table[(x, y)]:
            bad.append((x, y, table[(x, y)], chi))
    return tuple(bad)
