"""Exact integral simplicial homology via Smith normal form, with
homology-sphere, Cohen-Macaulay and orientability tests and a sound
fundamental-group triviality heuristic.

All linear algebra runs over Python's arbitrary-precision integers; no
floating point is involved anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import NotPure, SimplicialComplex, is_pseudomanifold, is_pure, link

ORIENTABLE = "orientable"
NON_ORIENTABLE = "non_orientable"
NOT_PSEUDOMANIFOLD = "not_pseudomanifold"
PI1_TRIVIAL = "trivial"
PI1_UNKNOWN = "unknown"


class DimensionMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# Smith normal form

@dataclass
class SnfResult:
    """diag(d1, ..., dr, 0, ...) = left @ M @ right with d1 | d2 | ... | dr.

    `diagonal` lists only the nonzero invariant factors; `left` and `right`
    are square unimodular integer matrices.
    """

    diagonal: tuple[int, ...]
    left: list
    right: list
    rows: int
    cols: int

    @property
    def rank(self) -> int:
        return len(self.diagonal)


def _find_pivot(A, m, n, t):
    best = None
    bi = bj = -1
    for i in range(t, m):
        row = A[i]
        for j in range(t, n):
            v = row[j]
            if v:
                a = -v if v < 0 else v
                if best is None or a < best:
                    best, bi, bj = a, i, j
                    if a == 1:
                        return bi, bj
    return None if best is None else (bi, bj)


def _diagonalize(A, m, n, L, R):
    """Reduce A in place to Smith form; returns the nonzero diagonal.

    Pivot choice: smallest nonzero absolute value, ties broken by lowest
    row then column index.  Row operations are mirrored into L, column
    operations into R, when given.
    """
    t = 0
    while True:
        piv = _find_pivot(A, m, n, t)
        if piv is None:
            break
        i0, j0 = piv
        if i0 != t:
            A[t], A[i0] = A[i0], A[t]
            if L is not None:
                L[t], L[i0] = L[i0], L[t]
        if j0 != t:
            for row in A:
                row[t], row[j0] = row[j0], row[t]
            if R is not None:
                for row in R:
                    row[t], row[j0] = row[j0], row[t]
        while True:
            # euclidean descent until row t and column t hold only the pivot
            while True:
                if A[t][t] < 0:
                    A[t] = [-v for v in A[t]]
                    if L is not None:
                        L[t] = [-v for v in L[t]]
                p = A[t][t]
                dirty = False
                for i in range(t + 1, m):
                    v = A[i][t]
                    if v:
                        q = v // p
                        if q:
                            rt = A[t]
                            A[i] = [a - q * b for a, b in zip(A[i], rt)]
                            if L is not None:
                                lt = L[t]
                                L[i] = [a - q * b for a, b in zip(L[i], lt)]
                        if A[i][t]:  # remainder is smaller than the pivot
                            A[t], A[i] = A[i], A[t]
                            if L is not None:
                                L[t], L[i] = L[i], L[t]
                            dirty = True
                            break
                if dirty:
                    continue
                for j in range(t + 1, n):
                    v = A[t][j]
                    if v:
                        q = v // p
                        if q:
                            for row in A:
                                row[j] -= q * row[t]
                            if R is not None:
                                for row in R:
                                    row[j] -= q * row[t]
                        if A[t][j]:
                            for row in A:
                                row[t], row[j] = row[j], row[t]
                            if R is not None:
                                for row in R:
                                    row[t], row[j] = row[j], row[t]
                            dirty = True
                            break
                if not dirty:
                    break
            # the pivot must divide everything that remains
            p = A[t][t]
            offender = None
            if p != 1:
                for i in range(t + 1, m):
                    row = A[i]
                    for j in range(t + 1, n):
                        if row[j] % p:
                            offender = i
                            break
                    if offender is not None:
                        break
            if offender is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[offender])]
            if L is not None:
                L[t] = [a + b for a, b in zip(L[t], L[offender])]
        t += 1
    return [A[i][i] for i in range(min(m, n)) if A[i][i]]


def smith_normal_form(M) -> SnfResult:
    """Smith normal form with the unimodular transforms."""
    m = len(M)
    n = len(M[0]) if m else 0
    A = [list(map(int, row)) for row in M]
    L = [[int(i == j) for j in range(m)] for i in range(m)]
    R = [[int(i == j) for j in range(n)] for i in range(n)]
    diag = _diagonalize(A, m, n, L, R)
    return SnfResult(tuple(diag), L, R, m, n)


def invariant_factors(M) -> tuple[int, ...]:
    """Nonzero Smith diagonal without the transform bookkeeping."""
    m = len(M)
    n = len(M[0]) if m else 0
    A = [list(map(int, row)) for row in M]
    return tuple(_diagonalize(A, m, n, None, None))


def mat_mul(A, B):
    if not A or not B:
        return []
    n = len(B)
    cols = len(B[0])
    out = []
    for row in A:
        acc = [0] * cols
        for k, a in enumerate(row):
            if a:
                bk = B[k]
                for j in range(cols):
                    acc[j] += a * bk[j]
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# chain complexes and homology groups

@dataclass
class ChainComplex:
    """Oriented simplicial chain complex with the reduced augmentation.

    faces[i] lists the i-faces as label tuples in sorted vertex order; the
    boundary of faces[i][c] sits in column c of boundaries[i].  The basis
    in dimension -1 is the single empty face, so boundaries[0] is the
    all-ones augmentation row.
    """

    faces: dict[int, list[tuple]]
    boundaries: dict[int, list]

    def boundary(self, i: int):
        return self.boundaries.get(i)

    def validate(self) -> None:
        """Assert boundary-of-boundary vanishes, as exact matrices."""
        for i in sorted(self.boundaries):
            if i + 1 in self.boundaries:
                prod = mat_mul(self.boundaries[i], self.boundaries[i + 1])
                assert all(all(v == 0 for v in row) for row in prod), f"d{i} . d{i + 1} != 0"


def chain_complex(K: SimplicialComplex) -> ChainComplex:
    """Faces ordered lexicographically, orientation from sorted vertex
    order, boundary signs alternating."""
    faces_by: dict[int, list[tuple]] = {}
    for m in K.face_masks():
        if m:
            t = tuple(K._labels(m))
            faces_by.setdefault(len(t) - 1, []).append(t)
    for lst in faces_by.values():
        lst.sort()
    boundaries: dict[int, list] = {}
    if 0 in faces_by:
        boundaries[0] = [[1] * len(faces_by[0])]
    for i in range(1, K.dim + 1):
        lower = {f: r for r, f in enumerate(faces_by[i - 1])}
        B = [[0] * len(faces_by[i]) for _ in range(len(faces_by[i - 1]))]
        for c, f in enumerate(faces_by[i]):
            for j in range(len(f)):
                tau = f[:j] + f[j + 1:]
                B[lower[tau]][c] = -1 if j % 2 else 1
        boundaries[i] = B
    return ChainComplex(faces_by, boundaries)


@dataclass
class HomologyGroups:
    """Reduced integral homology: Betti number and torsion coefficients per
    dimension, from -1 up to the dimension of the complex."""

    betti: dict[int, int]
    torsion: dict[int, tuple[int, ...]]

    def group(self, i: int) -> str:
        b = self.betti.get(i, 0)
        parts = []
        if b == 1:
            parts.append("Z")
        elif b > 1:
            parts.append(f"Z^{b}")
        parts.extend(f"Z/{k}" for k in self.torsion.get(i, ()))
        return " + ".join(parts) if parts else "0"

    def is_trivial(self, i: int) -> bool:
        return self.betti.get(i, 0) == 0 and not self.torsion.get(i, ())

    def dims(self) -> list[int]:
        return sorted(set(self.betti) | set(self.torsion))

    def __str__(self):
        return ", ".join(f"H~{i}={self.group(i)}" for i in self.dims())

    @classmethod
    def of(cls, dim: int, betti: dict[int, int] | None = None, torsion: dict[int, tuple[int, ...]] | None = None) -> "HomologyGroups":
        """Groups on dimensions -1..dim with the given nonzero parts."""
        b = {i: 0 for i in range(-1, dim + 1)}
        t = {i: () for i in range(-1, dim + 1)}
        b.update(betti or {})
        t.update({k: tuple(v) for k, v in (torsion or {}).items()})
        return cls(b, t)


def reduced_homology(K: SimplicialComplex) -> HomologyGroups:
    """Betti numbers and torsion from the ranks and invariant factors of
    the boundary matrices; the reduced convention gives the empty complex
    H~(-1) = Z and any connected complex H~0 = 0."""
    cc = chain_complex(K)
    d = K.dim
    counts = {-1: 1}
    for i in range(0, d + 1):
        counts[i] = len(cc.faces.get(i, ()))
    inv = {i: invariant_factors(cc.boundaries[i]) for i in cc.boundaries}
    rank = {i: len(v) for i, v in inv.items()}
    betti = {}
    torsion = {}
    for i in range(-1, d + 1):
        betti[i] = counts[i] - rank.get(i, 0) - rank.get(i + 1, 0)
        torsion[i] = tuple(f for f in inv.get(i + 1, ()) if f > 1)
    return HomologyGroups(betti, torsion)


@dataclass
class SphereVerdict:
    ok: bool
    dim: int
    failed_dim: int | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def is_homology_sphere(K: SimplicialComplex, d: int) -> SphereVerdict:
    """True iff reduced homology vanishes below d and equals Z in d."""
    if K.dim != d:
        raise DimensionMismatch(f"complex has dimension {K.dim}, expected {d}")
    H = reduced_homology(K)
    for i in range(-1, d):
        if not H.is_trivial(i):
            return SphereVerdict(False, d, i, f"H~{i} = {H.group(i)}")
    if H.betti.get(d, 0) != 1 or H.torsion.get(d, ()):
        return SphereVerdict(False, d, d, f"H~{d} = {H.group(d)}, want Z")
    return SphereVerdict(True, d)


@dataclass
class CMVerdict:
    ok: bool
    witness_face: tuple | None = None
    failed_dim: int | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def is_homology_cm(K: SimplicialComplex) -> CMVerdict:
    """Homology Cohen-Macaulay over Z: the complex is pure and the link of
    every face, the empty face included, has vanishing reduced homology
    below its own dimension and torsion-free top homology."""
    p = is_pure(K)
    if not p:
        raise NotPure(*p.witness)
    for m in K.face_masks():
        sigma = tuple(K._labels(m))
        lk = link(K, sigma)
        dl = lk.dim
        H = reduced_homology(lk)
        for i in range(-1, dl):
            if not H.is_trivial(i):
                return CMVerdict(False, sigma, i, f"link of {list(sigma)} has H~{i} = {H.group(i)}")
        if H.torsion.get(dl, ()):
            return CMVerdict(False, sigma, dl, f"link of {list(sigma)} has torsion in H~{dl}")
    return CMVerdict(True)


def orientability_class(K: SimplicialComplex) -> str:
    """For connected pseudomanifolds: orientable iff the top homology is Z,
    non-orientable iff it vanishes; anything else is not a pseudomanifold."""
    if not is_pseudomanifold(K):
        return NOT_PSEUDOMANIFOLD
    H = reduced_homology(K)
    return ORIENTABLE if H.betti.get(K.dim, 0) == 1 else NON_ORIENTABLE


# ---------------------------------------------------------------------------
# fundamental group heuristic

def _free_reduce(word):
    out = []
    for s in word:
        if out and out[-1] == -s:
            out.pop()
        else:
            out.append(s)
    return out


def _cyc_reduce(word):
    word = _free_reduce(word)
    while len(word) > 1 and word[0] == -word[-1]:
        word = _free_reduce(word[1:-1])
    return word


def _solve_for(word, pos):
    """Rewrite the relator so the symbol at pos reads g = replacement."""
    s = word[pos]
    rot = word[pos:] + word[:pos]
    if s < 0:
        rot = [-c for c in reversed(rot)]
        rot = rot[rot.index(-s):] + rot[:rot.index(-s)]
    # rot = [g, c1, ..., ck] and rot == 1, so g = (c1 ... ck)^-1
    return abs(s), [-c for c in reversed(rot[1:])]


def pi1_triviality(K: SimplicialComplex, budget: int = 10**6) -> str:
    """Sound triviality test for the edge-path group.

    Builds the spanning-tree presentation (generators are the non-tree
    edges, relators come from the triangles) and applies bounded Tietze
    simplification: drop empty relators, kill generators forced trivial by
    length-one relators, and eliminate generators occurring exactly once in
    some relator by substitution, with free and cyclic reduction after each
    move.  Returns "trivial" only if every generator is eliminated; budget
    exhaustion or a stuck presentation yields "unknown", never a false
    "trivial".
    """
    if K.dim < 2:
        raise ValueError("the fundamental-group heuristic needs dimension >= 2")
    nv = len(K.vertices)
    edges = []
    triangles = []
    for m in K.face_masks():
        c = m.bit_count()
        if c == 2:
            edges.append(tuple(i for i in range(nv) if m >> i & 1))
        elif c == 3:
            triangles.append(tuple(i for i in range(nv) if m >> i & 1))
    adj = [[] for _ in range(nv)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = [False] * nv
    seen[0] = True
    queue = [0]
    tree = set()
    while queue:
        a = queue.pop(0)
        for b in sorted(adj[a]):
            if not seen[b]:
                seen[b] = True
                tree.add((a, b) if a < b else (b, a))
                queue.append(b)
    if not all(seen):
        raise ValueError("the fundamental-group heuristic needs a connected complex")

    gen_id = {}
    for e in sorted(edges):
        if e not in tree:
            gen_id[e] = len(gen_id) + 1

    def sym(a, b):
        e = (a, b) if a < b else (b, a)
        g = gen_id.get(e)
        if g is None:
            return 0
        return g if a < b else -g

    words = []
    for u, v, w in sorted(triangles):
        word = _cyc_reduce([s for s in (sym(u, v), sym(v, w), sym(w, u)) if s])
        if word:
            words.append(word)
    gens = set(gen_id.values())

    ops = 0
    while gens:
        if ops > budget:
            return PI1_UNKNOWN
        move = None  # (kind, data)
        for idx in sorted(range(len(words)), key=lambda k: (len(words[k]), words[k])):
            w = words[idx]
            if len(w) == 1:
                move = ("kill", idx, abs(w[0]), [])
                break
            counts: dict[int, int] = {}
            for s in w:
                counts[abs(s)] = counts.get(abs(s), 0) + 1
            for pos, s in enumerate(w):
                if counts[abs(s)] == 1:
                    g, rep = _solve_for(w, pos)
                    move = ("subst", idx, g, rep)
                    break
            if move:
                break
        if move is None:
            return PI1_UNKNOWN
        _, idx, g, rep = move
        del words[idx]
        gens.discard(g)
        new_words = []
        for w in words:
            if any(abs(s) == g for s in w):
                out = []
                for s in w:
                    if s == g:
                        out.extend(rep)
                    elif s == -g:
                        out.extend(-c for c in reversed(rep))
                    else:
                        out.append(s)
                ops += len(out)
                w = _cyc_reduce(out)
            if w:
                new_words.append(w)
            ops += 1
        words = new_words
    return PI1_TRIVIAL
