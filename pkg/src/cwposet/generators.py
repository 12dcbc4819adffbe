"""Example families: Boolean lattices, cross-polytope face posets, Bruhat
intervals of symmetric groups, and a small library of named triangulations
with their expected homology.

Size caps keep whole-poset certification runs at desk scale.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, permutations, product as iproduct

from .complexes import SimplicialComplex
from .homology import HomologyGroups
from .poset import NotComparable, Poset, build_poset


class OutOfRange(ValueError):
    pass


class UnknownName(ValueError):
    pass


def subset_label(s) -> str:
    return "{" + ",".join(str(i) for i in sorted(s)) + "}"


def boolean_lattice(n: int) -> Poset:
    """Subsets of {1..n} ordered by inclusion; covers add one element."""
    if not 1 <= n <= 8:
        raise OutOfRange(f"boolean_lattice wants 1 <= n <= 8, got {n}")
    ground = range(1, n + 1)
    subsets = []
    for k in range(n + 1):
        subsets.extend(combinations(ground, k))
    elements = [subset_label(s) for s in subsets]
    covers = []
    for s in subsets:
        inside = set(s)
        for i in ground:
            if i not in inside:
                covers.append((subset_label(s), subset_label(inside | {i})))
    return build_poset(elements, covers)


def crosspolytope_face_poset(n: int) -> Poset:
    """Face poset, bottom included, of the boundary of the n-dimensional
    cross-polytope: faces are the sets of signed indices +i / -i containing
    no antipodal pair, of size at most n."""
    if not 1 <= n <= 6:
        raise OutOfRange(f"crosspolytope_face_poset wants 1 <= n <= 6, got {n}")
    faces = []
    for k in range(n + 1):
        for support in combinations(range(1, n + 1), k):
            for signs in iproduct("+-", repeat=k):
                faces.append(frozenset(f"{s}{i}" for s, i in zip(signs, support)))
    elements = [subset_label(f) for f in faces]
    face_set = set(faces)
    covers = []
    for f in faces:
        taken = {v[1:] for v in f}
        for i in range(1, n + 1):
            if str(i) in taken:
                continue
            for s in "+-":
                g = f | {f"{s}{i}"}
                if g in face_set:
                    covers.append((subset_label(f), subset_label(g)))
    return build_poset(elements, covers)


def _parse_perm(p, n: int) -> tuple[int, ...]:
    if isinstance(p, str):
        vals = tuple(int(c) for c in p)
    else:
        vals = tuple(int(c) for c in p)
    if sorted(vals) != list(range(1, n + 1)):
        raise OutOfRange(f"{p!r} is not a permutation of 1..{n}")
    return vals


def _perm_label(p) -> str:
    return "".join(str(i) for i in p)


def _inversions(p) -> int:
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])


def _dot_leq(u, w) -> bool:
    """Sorted-prefix comparability criterion for the strong order."""
    for j in range(1, len(u)):
        for a, b in zip(sorted(u[:j]), sorted(w[:j])):
            if a > b:
                return False
    return True


def _is_cover(v, w) -> bool:
    """w covers v: one transposition apart with the length up by one."""
    diff = [i for i in range(len(v)) if v[i] != w[i]]
    if len(diff) != 2:
        return False
    i, j = diff
    if v[i] != w[j] or v[j] != w[i]:
        return False
    return _inversions(w) == _inversions(v) + 1


def bruhat_interval(n: int, u, w) -> Poset:
    """The strong-order interval [u, w] in the symmetric group on 1..n.

    Covers come from transposition multiplication raising length by one;
    comparability is decided by the sorted-prefix criterion, and the two
    are cross-checked on sampled pairs after the build.
    """
    if not 2 <= n <= 6:
        raise OutOfRange(f"bruhat_interval wants 2 <= n <= 6, got {n}")
    u = _parse_perm(u, n)
    w = _parse_perm(w, n)
    if not _dot_leq(u, w):
        raise NotComparable(_perm_label(u), _perm_label(w))
    members = [v for v in permutations(range(1, n + 1)) if _dot_leq(u, v) and _dot_leq(v, w)]
    lengths = {v: _inversions(v) for v in members}
    covers = []
    for v in members:
        for x in members:
            if lengths[x] == lengths[v] + 1 and _is_cover(v, x):
                covers.append((_perm_label(v), _perm_label(x)))
    P = build_poset([_perm_label(v) for v in members], covers)
    rng = random.Random(0xB247)
    for _ in range(5):
        a, b = rng.choice(members), rng.choice(members)
        assert P.leq(_perm_label(a), _perm_label(b)) == _dot_leq(a, b), \
            "cover-generated order disagrees with the prefix criterion"
    return P


@dataclass
class NamedTriangulation:
    """A stock triangulation bundled with its expected reduced homology."""

    name: str
    complex: SimplicialComplex
    homology: HomologyGroups


_RP2_FACETS = [
    (1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 3, 5), (1, 4, 6),
    (2, 3, 4), (2, 3, 6), (2, 4, 5), (3, 5, 6), (4, 5, 6),
]

_TORUS_FACETS = [
    ((i % 7) + 1, ((i + 1) % 7) + 1, ((i + 3) % 7) + 1) for i in range(7)
] + [
    ((i % 7) + 1, ((i + 2) % 7) + 1, ((i + 3) % 7) + 1) for i in range(7)
]


def named_triangulation(name: str, param: int | None = None) -> NamedTriangulation:
    """Lookup: rp2_6, torus_7, boundary_simplex(d), boundary_crosspolytope(d)."""
    name = str(name)
    if "(" in name and name.endswith(")"):
        base, arg = name[:-1].split("(", 1)
        name, param = base, int(arg)
    if name == "rp2_6":
        K = SimplicialComplex(_RP2_FACETS)
        return NamedTriangulation("rp2_6", K, HomologyGroups.of(2, torsion={1: (2,)}))
    if name == "torus_7":
        K = SimplicialComplex(_TORUS_FACETS)
        return NamedTriangulation("torus_7", K, HomologyGroups.of(2, betti={1: 2, 2: 1}))
    if name == "boundary_simplex":
        if param is None or not 1 <= param <= 6:
            raise OutOfRange(f"boundary_simplex wants 1 <= d <= 6, got {param}")
        verts = range(1, param + 2)
        K = SimplicialComplex(combinations(verts, param))
        return NamedTriangulation(f"boundary_simplex({param})", K, HomologyGroups.of(param - 1, betti={param - 1: 1}))
    if name == "boundary_crosspolytope":
        if param is None or not 1 <= param <= 5:
            raise OutOfRange(f"boundary_crosspolytope wants 1 <= d <= 5, got {param}")
        facets = []
        for signs in iproduct("+-", repeat=param):
            facets.append(tuple(f"{s}{i}" for i, s in enumerate(signs, start=1)))
        K = SimplicialComplex(facets)
        return NamedTriangulation(f"boundary_crosspolytope({param})", K, HomologyGroups.of(param - 1, betti={param - 1: 1}))
    raise UnknownName(f"no triangulation named {name!r}")


NAMED_TRIANGULATIONS = ("rp2_6", "torus_7", "boundary_simplex(d<=6)", "boundary_crosspolytope(d<=5)")
