"""Finite abstract simplicial complexes and the order-complex / face-poset
dictionary.

A complex is stored by its facets (inclusion-maximal faces) over opaque
string vertex labels.  The complex whose only face is the empty set is the
(-1)-sphere and is written with the single facet []; a complex with no
faces at all is rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable

from .poset import Poset, build_poset


class ComplexError(ValueError):
    """Rejected complex input."""


class NotAFace(ComplexError):
    def __init__(self, face):
        super().__init__(f"{sorted(map(str, face))} is not a face of the complex")
        self.face = frozenset(map(str, face))


class NotPure(ComplexError):
    def __init__(self, small, big):
        super().__init__(f"not pure: facets {list(small)} and {list(big)} differ in dimension")
        self.witness = (tuple(small), tuple(big))


def face_label(face: Iterable) -> str:
    """Canonical brace label of a vertex set, e.g. {} or {a,b}."""
    return "{" + ",".join(sorted(map(str, face))) + "}"


class SimplicialComplex:
    """Immutable abstract simplicial complex.

    `vertices` is the sorted label tuple and `facets` the lexicographically
    sorted tuple of facets (each a label tuple in vertex order).  The input
    may list any generating family of faces; non-maximal members are
    absorbed.
    """

    __slots__ = ("vertices", "facets", "_vindex", "_facet_masks", "_faces_memo")

    def __init__(self, facets: Iterable[Iterable]):
        gens = {frozenset(map(str, f)) for f in facets}
        if not gens:
            raise ComplexError("no faces given; the empty complex is written [[]]")
        maximal = [f for f in gens if not any(f < g for g in gens)]
        vertices = tuple(sorted({v for f in maximal for v in f}))
        vindex = {v: i for i, v in enumerate(vertices)}
        idx_facets = sorted(tuple(sorted(vindex[v] for v in f)) for f in maximal)
        self.vertices = vertices
        self.facets = tuple(tuple(vertices[i] for i in f) for f in idx_facets)
        self._vindex = vindex
        self._facet_masks = tuple(sum(1 << i for i in f) for f in idx_facets)
        self._faces_memo = None

    @property
    def dim(self) -> int:
        return max(len(f) for f in self.facets) - 1

    def facet_sets(self) -> frozenset:
        return frozenset(frozenset(f) for f in self.facets)

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.facet_sets() == other.facet_sets()

    __hash__ = None

    def __repr__(self):
        return f"SimplicialComplex(dim={self.dim}, facets={len(self.facets)})"

    def _labels(self, mask: int) -> list:
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(self.vertices[i])
            mask >>= 1
            i += 1
        return out

    def _mask(self, face) -> int | None:
        m = 0
        for v in face:
            i = self._vindex.get(str(v))
            if i is None:
                return None
            m |= 1 << i
        return m

    def has_face(self, face) -> bool:
        m = self._mask(face)
        if m is None:
            return False
        return any(m & ~fm == 0 for fm in self._facet_masks)

    def face_masks(self) -> list[int]:
        """Every face as a vertex bitmask, the empty face included."""
        if self._faces_memo is None:
            seen = {0}
            for f in self.facets:
                idxs = [self._vindex[v] for v in f]
                for r in range(1, len(idxs) + 1):
                    for comb in combinations(idxs, r):
                        seen.add(sum(1 << i for i in comb))
            self._faces_memo = sorted(seen)
        return self._faces_memo

    def faces(self, include_empty: bool = True) -> list[frozenset]:
        out = [frozenset(self._labels(m)) for m in self.face_masks() if m or include_empty]
        out.sort(key=lambda f: (len(f), tuple(sorted(f))))
        return out

    def f_vector(self) -> tuple[int, ...]:
        """(f_0, ..., f_dim) over the nonempty faces; () for the empty complex."""
        counts = [0] * (self.dim + 1)
        for m in self.face_masks():
            if m:
                counts[m.bit_count() - 1] += 1
        return tuple(counts)

    def num_faces(self, i: int) -> int:
        if i == -1:
            return 1
        fv = self.f_vector()
        return fv[i] if 0 <= i < len(fv) else 0


def order_complex(P: Poset) -> SimplicialComplex:
    """Complex of chains of P; the facets are the maximal chains."""
    mins = P.minimals()
    if not mins:
        return SimplicialComplex([[]])
    chains = []

    def extend(chain, last):
        ups = P.upper_covers(last)
        if not ups:
            chains.append(chain)
            return
        for nxt in ups:
            extend(chain + (nxt,), nxt)

    for m in mins:
        extend((m,), m)
    return SimplicialComplex(chains)


def face_poset(K: SimplicialComplex) -> Poset:
    """All faces of K ordered by inclusion, with the empty face as bottom.

    The rank of a face is its cardinality.
    """
    masks = K.face_masks()
    labels = {m: face_label(K._labels(m)) for m in masks}
    mask_set = set(masks)
    covers = []
    for m in masks:
        for i in range(len(K.vertices)):
            b = 1 << i
            if not m & b and (m | b) in mask_set:
                covers.append((labels[m], labels[m | b]))
    return build_poset([labels[m] for m in masks], covers)


def link(K: SimplicialComplex, sigma: Iterable) -> SimplicialComplex:
    """Faces disjoint from sigma whose union with sigma is a face of K."""
    sm = K._mask(sigma)
    if sm is None or not K.has_face(sigma):
        raise NotAFace(sigma)
    if sm == 0:
        return K
    fac = []
    for fm, f in zip(K._facet_masks, K.facets):
        if sm & ~fm == 0:
            fac.append([v for v in f if not (1 << K._vindex[v]) & sm])
    return SimplicialComplex(fac)


def join(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """Join: facets are unions of a facet of K and a facet of L.

    Colliding vertex labels on the L side are suffixed with ' until fresh.
    """
    used = set(K.vertices)
    rename = {}
    for v in L.vertices:
        w = v
        while w in used:
            w = w + "'"
        rename[v] = w
        used.add(w)
    facets = []
    for f in K.facets:
        for g in L.facets:
            facets.append(tuple(f) + tuple(rename[v] for v in g))
    return SimplicialComplex(facets)


def barycentric_subdivision(K: SimplicialComplex) -> SimplicialComplex:
    """First barycentric subdivision: vertices are the nonempty faces of K,
    facets are the maximal chains of faces under inclusion."""
    if K.dim == -1:
        return SimplicialComplex([[]])
    facets = []
    for f in K.facets:
        for perm in permutations(f):
            chain = []
            cur = []
            for v in perm:
                cur.append(v)
                chain.append(face_label(cur))
            facets.append(tuple(chain))
    return SimplicialComplex(facets)


@dataclass
class PureVerdict:
    ok: bool
    witness: tuple[tuple, tuple] | None = None

    def __bool__(self):
        return self.ok


def is_pure(K: SimplicialComplex) -> PureVerdict:
    """True iff all facets have the same cardinality; else two witnesses."""
    sizes = {len(f) for f in K.facets}
    if len(sizes) <= 1:
        return PureVerdict(True)
    small = min(K.facets, key=lambda f: (len(f), f))
    big = max(K.facets, key=lambda f: (len(f), f))
    return PureVerdict(False, (small, big))


@dataclass
class PseudomanifoldVerdict:
    ok: bool
    pure: bool
    ridge_degrees_ok: bool | None
    connected: bool | None
    pure_witness: tuple | None = None
    ridge_witness: tuple | None = None  # (ridge labels, facet degree)

    def __bool__(self):
        return self.ok


def is_pseudomanifold(K: SimplicialComplex, require_connected: bool = True) -> PseudomanifoldVerdict:
    """Pure, every ridge in exactly two facets, facet-ridge graph connected.

    With require_connected=False only the first two conditions decide the
    verdict; the connectivity result is still reported.
    """
    p = is_pure(K)
    if not p:
        return PseudomanifoldVerdict(False, False, None, None, pure_witness=p.witness)
    k = len(K.facets[0])
    if k == 0:
        return PseudomanifoldVerdict(True, True, True, True)
    ridge_of: dict[int, list[int]] = {}
    for idx, fm in enumerate(K._facet_masks):
        mm = fm
        while mm:
            b = mm & -mm
            ridge_of.setdefault(fm & ~b, []).append(idx)
            mm ^= b
    bad = sorted((r, len(owners)) for r, owners in ridge_of.items() if len(owners) != 2)
    ridge_ok = not bad
    ridge_witness = None
    if bad:
        r, deg = bad[0]
        ridge_witness = (tuple(K._labels(r)), deg)

    parent = list(range(len(K.facets)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for owners in ridge_of.values():
        for other in owners[1:]:
            ra, rb = find(owners[0]), find(other)
            if ra != rb:
                parent[ra] = rb
    connected = len({find(i) for i in range(len(K.facets))}) == 1
    ok = ridge_ok and (connected or not require_connected)
    return PseudomanifoldVerdict(ok, True, ridge_ok, connected, ridge_witness=ridge_witness)


def is_connected(K: SimplicialComplex) -> bool:
    """Vertex connectivity through shared facets; vacuously true without vertices."""
    if not K.vertices:
        return True
    parent = list(range(len(K.vertices)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for f in K.facets:
        idxs = [K._vindex[v] for v in f]
        for other in idxs[1:]:
            ra, rb = find(idxs[0]), find(other)
            if ra != rb:
                parent[ra] = rb
    return len({find(i) for i in range(len(K.vertices))}) == 1


@dataclass
class IsoVerdict:
    status: str  # "isomorphic" | "not_isomorphic" | "unknown"
    bijection: dict | None = None
    nodes: int = 0

    def __bool__(self):
        return self.status == "isomorphic"


def are_isomorphic(K: SimplicialComplex, L: SimplicialComplex, budget: int = 10**6) -> IsoVerdict:
    """Backtracking search for a vertex bijection carrying facets to facets.

    Vertices are matched only when their local signatures (facet-size
    multiset and edge degree) agree; partial maps must preserve edges.  A
    full search without a match proves non-isomorphism; running out of the
    node budget yields "unknown".
    """
    if sorted(len(f) for f in K.facets) != sorted(len(f) for f in L.facets):
        return IsoVerdict("not_isomorphic")
    if len(K.vertices) != len(L.vertices):
        return IsoVerdict("not_isomorphic")
    if not K.vertices:
        return IsoVerdict("isomorphic", {})
    if K.f_vector() != L.f_vector():
        return IsoVerdict("not_isomorphic")

    def profile(C):
        nverts = len(C.vertices)
        adj = [0] * nverts
        sizes = [[] for _ in range(nverts)]
        for fm, f in zip(C._facet_masks, C.facets):
            for v in f:
                i = C._vindex[v]
                adj[i] |= fm & ~(1 << i)
                sizes[i].append(len(f))
        sig = [(tuple(sorted(s)), a.bit_count()) for s, a in zip(sizes, adj)]
        return adj, sig

    adj_k, sig_k = profile(K)
    adj_l, sig_l = profile(L)
    if sorted(sig_k) != sorted(sig_l):
        return IsoVerdict("not_isomorphic")

    rarity = {}
    for s in sig_k:
        rarity[s] = rarity.get(s, 0) + 1
    order = sorted(range(len(K.vertices)), key=lambda i: (rarity[sig_k[i]], i))
    candidates = [[j for j in range(len(L.vertices)) if sig_l[j] == sig_k[i]] for i in order]

    l_facets = set(L._facet_masks)
    mapping = [-1] * len(K.vertices)
    used = [False] * len(L.vertices)
    nodes = 0

    def assign(depth: int) -> bool | None:
        nonlocal nodes
        if depth == len(order):
            for fm, f in zip(K._facet_masks, K.facets):
                img = 0
                for v in f:
                    img |= 1 << mapping[K._vindex[v]]
                if img not in l_facets:
                    return False
            return True
        i = order[depth]
        for j in candidates[depth]:
            if used[j]:
                continue
            nodes += 1
            if nodes > budget:
                return None
            ok = True
            for d in range(depth):
                w = order[d]
                if bool(adj_k[i] >> w & 1) != bool(adj_l[j] >> mapping[w] & 1):
                    ok = False
                    break
            if not ok:
                continue
            mapping[i] = j
            used[j] = True
            res = assign(depth + 1)
            if res:
                return True
            used[j] = False
            mapping[i] = -1
            if res is None:
                return None
        return False

    res = assign(0)
    if res is None:
        return IsoVerdict("unknown", None, nodes)
    if res:
        bij = {K.vertices[i]: L.vertices[mapping[i]] for i in range(len(K.vertices))}
        return IsoVerdict("isomorphic", bij, nodes)
    return IsoVerdict("not_isomorphic", None, nodes)


def same_face_sets(K: SimplicialComplex, L: SimplicialComplex) -> bool:
    """Exact equality of labelled face sets."""
    return K.facet_sets() == L.facet_sets()


def complex_to_doc(K: SimplicialComplex) -> dict:
    """JSON document form: {"facets": [[v, ...], ...]}; [[]] is the empty complex."""
    return {"facets": [list(f) for f in K.facets]}


def complex_from_doc(doc: dict) -> SimplicialComplex:
    if not isinstance(doc, dict) or "facets" not in doc:
        raise ComplexError('a complex document needs a "facets" key')
    facets = doc["facets"]
    if not isinstance(facets, list) or any(not isinstance(f, (list, tuple)) for f in facets):
        raise ComplexError('"facets" must be a list of vertex lists')
    return SimplicialComplex(facets)
