"""Shelling verification, bounded exhaustive shelling search, and the
thin-plus-shellable certification route for graded posets.

The search works over facet bitmasks.  A facet F extends a partial
shelling with used set S exactly when the set R of vertices v of F whose
opposite ridge F minus v lies in some used facet is nonempty and no used
facet contains all of R; this depends only on the set S, never on its
order, which is what makes memoising dead prefixes sound.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import NotPure, SimplicialComplex, is_pure, order_complex
from .invariants import MissingBounds, is_thin, ThinVerdict
from .poset import IntervalSpec, Poset, interval

FOUND = "found"
NONE = "none"
BUDGET_EXHAUSTED = "budget_exhausted"

CW_CERTIFIED = "cw_certified"
FAILED = "failed"
INCONCLUSIVE = "inconclusive"

DEFAULT_BUDGET = 10**7


class NotAPermutation(ValueError):
    pass


@dataclass
class ShellingVerdict:
    ok: bool
    first_bad: int | None = None  # position in the order, 0-based
    intersection: tuple[tuple[str, ...], ...] | None = None

    def __bool__(self):
        return self.ok


def verify_shelling(K: SimplicialComplex, order) -> ShellingVerdict:
    """Check that each facet meets the union of its predecessors in a
    nonempty pure complex of codimension one.

    This is the direct definition: the maximal sets among the pairwise
    intersections with earlier facets must all be ridges of the new facet.
    """
    p = is_pure(K)
    if not p:
        raise NotPure(*p.witness)
    order = list(order)
    k = len(K.facets)
    if sorted(order) != list(range(k)):
        raise NotAPermutation(f"order must be a permutation of 0..{k - 1}")
    masks = K._facet_masks
    for j in range(1, k):
        F = masks[order[j]]
        inter = {F & masks[order[i]] for i in range(j)}
        maxi = [m for m in inter if not any(m != m2 and m & ~m2 == 0 for m2 in inter)]
        want = F.bit_count() - 1
        if any(m.bit_count() != want for m in maxi):
            labels = tuple(tuple(K._labels(m)) for m in sorted(maxi))
            return ShellingVerdict(False, j, labels)
    return ShellingVerdict(True)


@dataclass
class ShellingSearch:
    status: str  # "found" | "none" | "budget_exhausted"
    order: tuple[int, ...] | None
    nodes: int

    def __bool__(self):
        return self.status == FOUND


def find_shelling(K: SimplicialComplex, budget: int = DEFAULT_BUDGET) -> ShellingSearch:
    """Depth-first search for a shelling order, facets tried in
    lexicographic order, with dead prefix-set memoisation.

    "none" is returned only after exhausting the search space; running out
    of the node budget returns "budget_exhausted" instead.
    """
    p = is_pure(K)
    if not p:
        raise NotPure(*p.witness)
    masks = list(K._facet_masks)
    k = len(masks)
    if k == 1:
        return ShellingSearch(FOUND, (0,), 0)

    ridges = []
    for fm in masks:
        r = []
        mm = fm
        while mm:
            b = mm & -mm
            r.append((b, fm & ~b))
            mm ^= b
        ridges.append(r)

    ridge_count: dict[int, int] = {}
    used: list[int] = []
    used_masks: list[int] = []
    used_bits = 0
    dead: set[int] = set()
    nodes = 0

    def can_extend(f: int) -> bool:
        R = 0
        for b, rm in ridges[f]:
            if ridge_count.get(rm, 0):
                R |= b
        if not R:
            return False
        for gm in used_masks:
            if R & ~gm == 0:
                return False
        return True

    def push(f: int):
        nonlocal used_bits
        used.append(f)
        used_masks.append(masks[f])
        used_bits |= 1 << f
        for _, rm in ridges[f]:
            ridge_count[rm] = ridge_count.get(rm, 0) + 1

    def pop():
        nonlocal used_bits
        f = used.pop()
        used_masks.pop()
        used_bits &= ~(1 << f)
        for _, rm in ridges[f]:
            ridge_count[rm] -= 1

    stack = [iter(range(k))]
    while stack:
        it = stack[-1]
        advanced = False
        for f in it:
            if used_bits >> f & 1:
                continue
            nodes += 1
            if nodes > budget:
                return ShellingSearch(BUDGET_EXHAUSTED, None, nodes)
            if used and not can_extend(f):
                continue
            if (used_bits | (1 << f)) in dead:
                continue
            push(f)
            if len(used) == k:
                return ShellingSearch(FOUND, tuple(used), nodes)
            stack.append(iter(range(k)))
            advanced = True
            break
        if not advanced:
            dead.add(used_bits)
            stack.pop()
            if used:
                pop()
    return ShellingSearch(NONE, None, nodes)


@dataclass
class IntervalShelling:
    lower: str
    upper: str
    rank_diff: int
    status: str
    nodes: int


@dataclass
class DanarajKleeReport:
    """Outcome of the thin-plus-shellable route.

    `verdict` quantifies over every open interval, `verdict_bottom` only
    over the intervals rooted at the unique minimal element; both need
    thinness.
    """

    thin: ThinVerdict
    intervals: tuple[IntervalShelling, ...]
    verdict: str
    verdict_bottom: str
    witness: str | None = None

    def __bool__(self):
        return self.verdict == CW_CERTIFIED


def danaraj_klee_check(P: Poset, budget: int = DEFAULT_BUDGET) -> DanarajKleeReport:
    """Thinness plus a shelling of every open interval's order complex."""
    bottom = P.bottom()
    if bottom is None or len(P) < 2:
        raise MissingBounds("the check needs a unique minimal element and at least one more element")
    thin = is_thin(P)
    entries = []
    pairs = sorted(P.comparable_pairs(), key=lambda p: (P.rank[p[1]] - P.rank[p[0]], p[0], p[1]))
    for x, y in pairs:
        K = order_complex(interval(P, IntervalSpec(x, y, "open")))
        res = find_shelling(K, budget)
        entries.append(IntervalShelling(x, y, P.rank[y] - P.rank[x], res.status, res.nodes))

    def combine(es, include_thin=True):
        if include_thin and not thin:
            x, y, mid = thin.violations[0]
            return FAILED, f"rank-2 interval ({x}, {y}) has {len(mid)} elements"
        bad = [e for e in es if e.status == NONE]
        if bad:
            e = bad[0]
            return FAILED, f"interval ({e.lower}, {e.upper}) has no shelling"
        out = [e for e in es if e.status == BUDGET_EXHAUSTED]
        if out:
            e = out[0]
            return INCONCLUSIVE, f"interval ({e.lower}, {e.upper}) exhausted the search budget"
        return CW_CERTIFIED, None

    verdict, witness = combine(entries)
    verdict_bottom, _ = combine([e for e in entries if e.lower == bottom])
    return DanarajKleeReport(thin, tuple(entries), verdict, verdict_bottom, witness)
