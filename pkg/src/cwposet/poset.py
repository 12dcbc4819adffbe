"""Finite graded posets with a validated Hasse diagram.

Elements are opaque string labels.  Construction checks that the cover
digraph is acyclic, that every listed cover is a genuine Hasse edge (not
implied through a third element), and that the longest-chain rank function
increases by exactly one along every cover.  Instances are immutable and
every operation returns a new poset.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


class PosetError(ValueError):
    """Rejected poset input."""


class CycleDetected(PosetError):
    """The cover digraph contains a directed cycle."""

    def __init__(self, cycle: list[str]):
        super().__init__("cover digraph has a cycle: " + " -> ".join(list(cycle) + list(cycle[:1])))
        self.cycle = list(cycle)


class NonCoverEdge(PosetError):
    """A listed cover is implied by transitivity through another element."""

    def __init__(self, low: str, high: str, via: str):
        super().__init__(f"({low}, {high}) is not a cover: it factors through {via}")
        self.edge = (low, high)
        self.via = via


class NotGraded(PosetError):
    """Some cover does not raise the longest-chain rank by exactly one."""

    def __init__(self, low: str, high: str, rank_low: int, rank_high: int):
        super().__init__(f"cover ({low}, {high}) jumps from rank {rank_low} to rank {rank_high}")
        self.edge = (low, high)


class NotComparable(PosetError):
    """Interval endpoints are not strictly ordered."""

    def __init__(self, low, high):
        super().__init__(f"{low} < {high} does not hold")
        self.pair = (low, high)


@dataclass(frozen=True)
class IntervalSpec:
    """An interval of a poset, open or closed."""

    lower: str
    upper: str
    openness: str = "open"

    def __post_init__(self):
        if self.openness not in ("open", "closed"):
            raise PosetError(f"openness must be 'open' or 'closed', got {self.openness!r}")


def _bits(mask: int):
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


class Poset:
    """Immutable finite graded poset.

    `elements` is the label tuple, `covers` the sorted Hasse edges as
    (low, high) pairs, and `rank` maps each label to its longest-chain
    height above the minimal elements.  Use :func:`build_poset` to
    construct instances; it performs all validation.
    """

    __slots__ = ("elements", "covers", "rank", "_index", "_up", "_down", "_above", "_below")

    def __init__(self, elements, covers, rank, index, up, down, above, below):
        self.elements = elements
        self.covers = covers
        self.rank = rank
        self._index = index
        self._up = up
        self._down = down
        self._above = above
        self._below = below

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, label):
        return label in self._index

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return set(self.elements) == set(other.elements) and set(self.covers) == set(other.covers)

    __hash__ = None

    def __repr__(self):
        return f"Poset({len(self.elements)} elements, {len(self.covers)} covers)"

    def _idx(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise PosetError(f"unknown element {label!r}") from None

    def leq(self, a, b) -> bool:
        return bool(self._above[self._idx(a)] >> self._idx(b) & 1)

    def lt(self, a, b) -> bool:
        return a != b and self.leq(a, b)

    def upper_covers(self, a) -> tuple[str, ...]:
        return tuple(self.elements[j] for j in self._up[self._idx(a)])

    def lower_covers(self, a) -> tuple[str, ...]:
        return tuple(self.elements[j] for j in self._down[self._idx(a)])

    def minimals(self) -> tuple[str, ...]:
        return tuple(e for i, e in enumerate(self.elements) if not self._down[i])

    def maximals(self) -> tuple[str, ...]:
        return tuple(e for i, e in enumerate(self.elements) if not self._up[i])

    def bottom(self) -> str | None:
        m = self.minimals()
        return m[0] if len(m) == 1 else None

    def top(self) -> str | None:
        m = self.maximals()
        return m[0] if len(m) == 1 else None

    @property
    def max_rank(self) -> int:
        return max(self.rank.values(), default=-1)

    def strictly_between(self, x, y) -> tuple[str, ...]:
        """The open interval (x, y) as a label tuple, in element order."""
        ix, iy = self._idx(x), self._idx(y)
        mask = self._above[ix] & self._below[iy] & ~(1 << ix) & ~(1 << iy)
        return tuple(self.elements[i] for i in _bits(mask))

    def comparable_pairs(self) -> list[tuple[str, str]]:
        """All strictly ordered pairs (x, y) with x < y, in element order."""
        out = []
        for i, x in enumerate(self.elements):
            above = self._above[i] & ~(1 << i)
            for j in _bits(above):
                out.append((x, self.elements[j]))
        return out


def build_poset(elements: Iterable, covers: Iterable, bounded_below: bool = False) -> Poset:
    """Validate a Hasse diagram and return the poset it presents.

    Raises CycleDetected, NonCoverEdge or NotGraded on bad input.  With
    bounded_below=True additionally requires a unique rank-0 element and
    at least one other element.
    """
    labels = [str(e) for e in elements]
    if len(set(labels)) != len(labels):
        dup = sorted({l for l in labels if labels.count(l) > 1})
        raise PosetError(f"duplicate element labels: {dup}")
    index = {l: i for i, l in enumerate(labels)}
    n = len(labels)

    cover_idx: list[tuple[int, int]] = []
    seen = set()
    for pair in covers:
        a, b = pair
        a, b = str(a), str(b)
        if a not in index:
            raise PosetError(f"cover references unknown label {a!r}")
        if b not in index:
            raise PosetError(f"cover references unknown label {b!r}")
        if a == b:
            raise CycleDetected([a])
        key = (index[a], index[b])
        if key not in seen:
            seen.add(key)
            cover_idx.append(key)

    up = [[] for _ in range(n)]
    down = [[] for _ in range(n)]
    for ia, ib in cover_idx:
        up[ia].append(ib)
        down[ib].append(ia)
    for lst in up:
        lst.sort()
    for lst in down:
        lst.sort()

    # topological order; failure pins a cycle
    indeg = [len(down[i]) for i in range(n)]
    ready = [i for i in range(n) if indeg[i] == 0]
    order = []
    while ready:
        ready.sort()
        i = ready.pop(0)
        order.append(i)
        for j in up[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
    if len(order) < n:
        remaining = {i for i in range(n) if indeg[i] > 0}
        start = min(remaining)
        path, pos = [], {}
        cur = start
        while cur not in pos:
            pos[cur] = len(path)
            path.append(cur)
            cur = min(j for j in up[cur] if j in remaining)
        raise CycleDetected([labels[i] for i in path[pos[cur]:]])

    above = [0] * n
    for i in reversed(order):
        m = 1 << i
        for j in up[i]:
            m |= above[j]
        above[i] = m
    below = [0] * n
    for i in order:
        m = 1 << i
        for j in down[i]:
            m |= below[j]
        below[i] = m

    for ia, ib in cover_idx:
        for ic in up[ia]:
            if ic != ib and above[ic] >> ib & 1:
                raise NonCoverEdge(labels[ia], labels[ib], labels[ic])

    ranks = [0] * n
    for i in order:
        if down[i]:
            ranks[i] = max(ranks[j] for j in down[i]) + 1
    for ia, ib in cover_idx:
        if ranks[ib] != ranks[ia] + 1:
            raise NotGraded(labels[ia], labels[ib], ranks[ia], ranks[ib])

    if bounded_below:
        mins = [i for i in range(n) if not down[i]]
        if len(mins) != 1 or n < 2:
            raise PosetError("bounded_below requires a unique minimal element and at least one other element")

    covers_sorted = tuple(sorted((labels[ia], labels[ib]) for ia, ib in cover_idx))
    return Poset(
        tuple(labels),
        covers_sorted,
        {l: ranks[i] for l, i in index.items()},
        index,
        tuple(tuple(u) for u in up),
        tuple(tuple(d) for d in down),
        tuple(above),
        tuple(below),
    )


def interval(P: Poset, spec: IntervalSpec) -> Poset:
    """The open or closed interval of P given by spec, with re-based ranks.

    Interval subsets are convex, so the Hasse edges of the restriction are
    exactly the covers of P between kept elements.
    """
    if spec.lower not in P:
        raise PosetError(f"unknown element {spec.lower!r}")
    if spec.upper not in P:
        raise PosetError(f"unknown element {spec.upper!r}")
    if not P.lt(spec.lower, spec.upper):
        raise NotComparable(spec.lower, spec.upper)
    inside = set(P.strictly_between(spec.lower, spec.upper))
    if spec.openness == "closed":
        inside |= {spec.lower, spec.upper}
    keep = [e for e in P.elements if e in inside]
    kept = set(keep)
    covers = [(a, b) for a, b in P.covers if a in kept and b in kept]
    return build_poset(keep, covers)


def product(P: Poset, Q: Poset) -> Poset:
    """Componentwise-order product; covers move in exactly one coordinate."""
    elements = [f"({p},{q})" for p in P.elements for q in Q.elements]
    covers = []
    for p1, p2 in P.covers:
        for q in Q.elements:
            covers.append((f"({p1},{q})", f"({p2},{q})"))
    for q1, q2 in Q.covers:
        for p in P.elements:
            covers.append((f"({p},{q1})", f"({p},{q2})"))
    return build_poset(elements, covers)


def induced_subposet(P: Poset, keep: Iterable) -> Poset:
    """Induced subposet on a subset of elements, with its Hasse diagram
    recomputed from the restricted order relation."""
    wanted = {str(e) for e in keep}
    unknown = wanted - set(P.elements)
    if unknown:
        raise PosetError(f"unknown elements {sorted(unknown)}")
    members = [e for e in P.elements if e in wanted]
    keep_mask = 0
    for e in members:
        keep_mask |= 1 << P._idx(e)
    covers = []
    for a in members:
        ia = P._idx(a)
        for b in members:
            if a == b or not P.leq(a, b):
                continue
            ib = P._idx(b)
            between = P._above[ia] & P._below[ib] & keep_mask & ~(1 << ia) & ~(1 << ib)
            if between == 0:
                covers.append((a, b))
    return build_poset(members, covers)


def poset_to_doc(P: Poset) -> dict:
    """JSON document form: {"elements": [...], "covers": [[low, high], ...]}."""
    return {"elements": list(P.elements), "covers": [list(c) for c in P.covers]}


def poset_from_doc(doc: dict) -> Poset:
    if not isinstance(doc, dict) or "elements" not in doc or "covers" not in doc:
        raise PosetError('a poset document needs "elements" and "covers" keys')
    covers = doc["covers"]
    if not isinstance(covers, list) or any(not isinstance(c, (list, tuple)) or len(c) != 2 for c in covers):
        raise PosetError('"covers" must be a list of [low, high] pairs')
    return build_poset(doc["elements"], [tuple(c) for c in covers])
