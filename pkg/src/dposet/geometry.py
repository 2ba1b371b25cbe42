"""Exact polytope kernel.

A QPolytope carries an optional vertex list, an optional list of inequalities
<a, x> <= b and an affine lattice used for all volume and lattice-point
computations. Everything lattice-related runs after the affine change of
coordinates that sends the designated lattice to the standard integer lattice.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations

import numpy as np

from . import config
from .errors import (
    Degenerate,
    InconsistentVH,
    MissingRep,
    NotLatticePolytope,
    OriginNotInterior,
    TooLarge,
)
from .linalg import (
    affine_rank,
    det,
    dot,
    integral_rows,
    inverse,
    nullspace,
    primitive,
    q,
    qvec,
    rank,
)
from .poset import bits


@dataclass(frozen=True)
class AffineLattice:
    """The lattice offset + span_Z(generators); generators are rows."""

    generators: tuple
    offset: tuple

    @staticmethod
    def standard(d: int) -> "AffineLattice":
        return AffineLattice(tuple(tuple(int(i == j) for j in range(d)) for i in range(d)), (0,) * d)

    @staticmethod
    def diagonal(scales, offset) -> "AffineLattice":
        d = len(scales)
        return AffineLattice(
            tuple(tuple(scales[i] if i == j else 0 for j in range(d)) for i in range(d)), tuple(offset)
        )

    @property
    def dim(self) -> int:
        return len(self.offset)

    @cached_property
    def _inv(self):
        inv = inverse([list(r) for r in self.generators])
        if inv is None:
            raise Degenerate("lattice generators are linearly dependent")
        return inv

    def to_coords(self, x) -> tuple:
        y = [a - b for a, b in zip(x, self.offset)]
        # x - o = z . G  (row vector times generator matrix)
        return tuple(q(sum(y[i] * self._inv[i][j] for i in range(len(y)))) for j in range(len(y)))

    def from_coords(self, z) -> tuple:
        d = self.dim
        return tuple(q(self.offset[j] + sum(z[i] * self.generators[i][j] for i in range(d))) for j in range(d))

    def transform_inequality(self, a, b):
        """<a, x> <= b in terms of lattice coordinates z."""
        return tuple(q(dot(a, g)) for g in self.generators), q(b - dot(a, self.offset))

    def contains(self, x) -> bool:
        return all(isinstance(v, int) for v in self.to_coords(x))

    def in_dual(self, ell) -> bool:
        """Whether the linear functional ell is integral on every lattice point."""
        return all(isinstance(q(dot(ell, g)), int) for g in self.generators) and isinstance(
            q(dot(ell, self.offset)), int
        )


@dataclass(frozen=True, eq=False)
class QPolytope:
    dim: int  # ambient dimension
    vertices: tuple | None = None
    inequalities: tuple | None = None  # pairs (normal, rhs)
    lattice: AffineLattice | None = None
    vertex_tags: tuple | None = None
    facet_tags: tuple | None = None
    name: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.vertices is not None:
            object.__setattr__(self, "vertices", tuple(qvec(v) for v in self.vertices))
        if self.inequalities is not None:
            object.__setattr__(self, "inequalities", tuple((qvec(a), q(b)) for a, b in self.inequalities))
        if self.lattice is None:
            object.__setattr__(self, "lattice", AffineLattice.standard(self.dim))

    def __repr__(self):
        nv = "?" if self.vertices is None else len(self.vertices)
        nf = "?" if self.inequalities is None else len(self.inequalities)
        return f"QPolytope({self.name or 'unnamed'}, ambient={self.dim}, vertices={nv}, facets={nf})"

    def require(self, v=False, h=False):
        if v and self.vertices is None:
            raise MissingRep(f"{self.name or 'polytope'} has no vertex list")
        if h and self.inequalities is None:
            raise MissingRep(f"{self.name or 'polytope'} has no inequality list")

    @cached_property
    def affine_dim(self) -> int:
        self.require(v=True)
        return affine_rank(self.vertices)

    @cached_property
    def incidence(self) -> tuple[int, ...]:
        """Bitmask of tight vertices for every inequality."""
        self.require(v=True, h=True)
        out = []
        for a, b in self.inequalities:
            m = 0
            for i, v in enumerate(self.vertices):
                s = dot(a, v)
                if s == b:
                    m |= 1 << i
                elif s > b:
                    raise InconsistentVH(f"vertex {v} violates {a} . x <= {b}")
            out.append(m)
        return tuple(out)

    def contains(self, x, strict=False) -> bool:
        self.require(h=True)
        if strict:
            return all(dot(a, x) < b for a, b in self.inequalities)
        return all(dot(a, x) <= b for a, b in self.inequalities)

    def with_(self, **changes) -> "QPolytope":
        kw = dict(
            dim=self.dim,
            vertices=self.vertices,
            inequalities=self.inequalities,
            lattice=self.lattice,
            vertex_tags=self.vertex_tags,
            facet_tags=self.facet_tags,
            name=self.name,
        )
        kw.update(changes)
        return QPolytope(**kw)


LabeledPolytope = QPolytope


def validate(P: QPolytope) -> None:
    """Vertex/facet consistency certificate; raises InconsistentVH."""
    P.require(v=True, h=True)
    d = P.affine_dim
    if len(set(P.vertices)) != len(P.vertices):
        raise InconsistentVH("duplicate vertices")
    inc = P.incidence
    seen = set()
    for (a, b), m in zip(P.inequalities, inc):
        if affine_rank([P.vertices[i] for i in bits(m)]) != d - 1:
            raise InconsistentVH(f"inequality {a} . x <= {b} is not facet-defining")
        if m in seen:
            raise InconsistentVH(f"inequality {a} . x <= {b} repeats a facet")
        seen.add(m)
    for i, v in enumerate(P.vertices):
        tight = [P.inequalities[k][0] for k, m in enumerate(inc) if m >> i & 1]
        if d == P.dim and rank(tight) < d:
            raise InconsistentVH(f"{v} is not a vertex of the inequality system")
        if len(tight) < d:
            raise InconsistentVH(f"{v} lies on fewer than {d} facets")


def irredundant(vertices, inequalities, tags=None):
    """Keep facet-defining inequalities (one per facet), in input order."""
    d = affine_rank(vertices)
    keep, keep_tags, seen = [], [], set()
    for k, (a, b) in enumerate(inequalities):
        tight = 0
        for i, v in enumerate(vertices):
            if dot(a, v) == b:
                tight |= 1 << i
        if tight in seen or affine_rank([vertices[i] for i in bits(tight)]) != d - 1:
            continue
        seen.add(tight)
        keep.append((a, b))
        if tags is not None:
            keep_tags.append(tags[k])
    return (keep, keep_tags) if tags is not None else keep


# ----------------------------------------------------------------- face lattice

@dataclass
class FaceLattice:
    dim: int
    faces: list  # vertex bitmasks; index 0 is the polytope
    dims: list
    children: list  # indices of maximal proper subfaces
    facet_masks: tuple

    @cached_property
    def fvector(self) -> tuple:
        counts = [0] * self.dim
        for d in self.dims:
            if 0 <= d < self.dim:
                counts[d] += 1
        return tuple(counts)

    def facets_containing(self, mask: int) -> int:
        out = 0
        for k, F in enumerate(self.facet_masks):
            if F & mask == mask:
                out |= 1 << k
        return out

    def pairs(self) -> list:
        """(vertex set, facet set) for every face."""
        return [(m, self.facets_containing(m)) for m in self.faces]

    def index(self) -> dict:
        return {m: i for i, m in enumerate(self.faces)}


def face_lattice(P: QPolytope) -> FaceLattice:
    P.require(v=True, h=True)
    d = P.affine_dim
    facets = tuple(P.incidence)
    top = (1 << len(P.vertices)) - 1
    faces, dims, children = [top], [d], [[]]
    where = {top: 0}
    level = [0]
    limit = config.budget().max_items
    for dim in range(d, 0, -1):
        nxt = []
        for fi in level:
            S = faces[fi]
            cands = {S & F for F in facets if S & F != S}
            maximal = []
            for c in sorted(cands, key=lambda m: -m.bit_count()):
                if not any(c & m == c for m in maximal):
                    maximal.append(c)
            for c in maximal:
                if c not in where:
                    where[c] = len(faces)
                    faces.append(c)
                    dims.append(dim - 1)
                    children.append([])
                    nxt.append(where[c])
                    config.check(len(faces), limit, "faces")
                children[fi].append(where[c])
        level = nxt
    # the empty face below every vertex
    faces.append(0)
    dims.append(-1)
    children.append([])
    for fi in level:
        children[fi].append(len(faces) - 1)
    return FaceLattice(d, faces, dims, children, facets)


def closure(P: QPolytope, S: int) -> int:
    """Smallest face (as vertex mask) containing the vertex set S."""
    out = (1 << len(P.vertices)) - 1
    for F in P.incidence:
        if F & S == S:
            out &= F
    return out


def is_face(P: QPolytope, S: int) -> bool:
    return S == 0 or closure(P, S) == S


# ------------------------------------------------------------------- polarity

def hull_inequalities(vertices) -> list:
    """Facets of a full-dimensional hull by brute force over vertex subsets.

    Defensive tool for tiny inputs only (no H-description available)."""
    vertices = [qvec(v) for v in vertices]
    d = len(vertices[0])
    if affine_rank(vertices) != d:
        raise Degenerate("hull is not full-dimensional")
    config.check(math.comb(len(vertices), d), config.budget().max_items, "hull subsets")
    found = {}
    for S in combinations(range(len(vertices)), d):
        p0 = vertices[S[0]]
        rows = [[a - b for a, b in zip(vertices[i], p0)] for i in S[1:]]
        ns = nullspace(rows, d)
        if len(ns) != 1:
            continue
        a = ns[0]
        vals = [dot(a, v) for v in vertices]
        b = dot(a, p0)
        if all(x <= b for x in vals):
            pass
        elif all(x >= b for x in vals):
            a, b = tuple(-x for x in a), -b
        else:
            continue
        key = primitive(list(a) + [b])
        found[key] = (key[:-1], key[-1])
    return sorted(found.values())


def with_hull(P: QPolytope) -> QPolytope:
    if P.inequalities is not None:
        return P
    return P.with_(inequalities=tuple(hull_inequalities(P.vertices)))


def polar(P: QPolytope) -> QPolytope:
    """Polar body; facet normals scaled to right-hand side 1 become vertices."""
    P = with_hull(P)
    if P.vertices is not None and P.affine_dim != P.dim:
        raise OriginNotInterior("polytope is not full-dimensional")
    if any(b <= 0 for _, b in P.inequalities):
        raise OriginNotInterior(f"origin is not in the interior of {P.name or 'the polytope'}")
    verts = tuple(tuple(q(Fraction(x) / b) for x in a) for a, b in P.inequalities)
    ineqs = None
    if P.vertices is not None:
        ineqs = tuple((v, 1) for v in P.vertices)
    return QPolytope(
        P.dim,
        verts,
        ineqs,
        vertex_tags=P.facet_tags,
        facet_tags=P.vertex_tags,
        name=f"polar({P.name})",
    )


# ----------------------------------------------------------- level properties

def is_2level(P: QPolytope) -> bool:
    P.require(v=True, h=True)
    return all(len({dot(a, v) for v in P.vertices}) == 2 for a, _ in P.inequalities)


def is_lattice_polytope(P: QPolytope) -> bool:
    P.require(v=True)
    return all(P.lattice.contains(v) for v in P.vertices)


def is_reflexive(P: QPolytope) -> bool:
    """Lattice polytope whose polar has vertices in the dual lattice."""
    P.require(v=True, h=True)
    if not is_lattice_polytope(P):
        return False
    if any(b <= 0 for _, b in P.inequalities):
        raise OriginNotInterior(f"origin is not in the interior of {P.name or 'the polytope'}")
    return all(P.lattice.in_dual(tuple(Fraction(x) / b for x in a)) for a, b in P.inequalities)


# -------------------------------------------------------- lattice coordinates

@dataclass
class _Coords:
    vertices: list  # in lattice coordinates
    A: list  # integer rows
    b: list  # integer right-hand sides


def lattice_coords(P: QPolytope) -> _Coords:
    P.require(v=True, h=True)
    cached = P.meta.get("_coords")
    if cached is not None:
        return cached
    L = P.lattice
    verts = [L.to_coords(v) for v in P.vertices]
    A, b = [], []
    for a, rhs in P.inequalities:
        a2, b2 = L.transform_inequality(a, rhs)
        row = primitive(list(a2) + [b2])
        A.append(list(row[:-1]))
        b.append(row[-1])
    out = _Coords(verts, A, b)
    P.meta["_coords"] = out
    return out


def _eliminate(A, b, verts, j):
    """Fourier-Motzkin: project onto coordinates < j, keep facets only."""
    pos = [k for k in range(len(A)) if A[k][j] > 0]
    neg = [k for k in range(len(A)) if A[k][j] < 0]
    rows = {}
    for k in range(len(A)):
        if A[k][j] == 0:
            rows[primitive(A[k][:j] + [b[k]])] = None
    for p in pos:
        for n in neg:
            cp, cn = A[p][j], -A[n][j]
            r = [cn * x + cp * y for x, y in zip(A[p][:j], A[n][:j])] + [cn * b[p] + cp * b[n]]
            if any(r[:-1]):
                rows[primitive(r)] = None
    proj = list({tuple(v[:j]) for v in verts})
    outA, outb, seen = [], [], set()
    for r in rows:
        a, rhs = r[:-1], r[-1]
        tight = [v for v in proj if dot(a, v) == rhs]
        if len(tight) >= j and affine_rank(tight) == j - 1:
            key = frozenset(tight)
            if key not in seen:
                seen.add(key)
                outA.append(list(a))
                outb.append(rhs)
    return outA, outb


def _projections(P: QPolytope):
    cached = P.meta.get("_proj")
    if cached is not None:
        return cached
    c = lattice_coords(P)
    d = P.dim
    if affine_rank(c.vertices) != d:
        raise Degenerate("lattice-point enumeration needs a full-dimensional polytope")
    H = [None] * (d + 1)
    H[d] = ([list(r) for r in c.A], list(c.b))
    for j in range(d - 1, 0, -1):
        H[j] = _eliminate(H[j + 1][0], H[j + 1][1], c.vertices, j)
    arrays = [None] + [(np.array(A, dtype=np.int64).reshape(len(A), k), np.array(b, dtype=np.int64)) for k, (A, b) in enumerate(H[1:], start=1)]
    P.meta["_proj"] = arrays
    return arrays


_CHUNK = 1 << 15


def _walk(P: QPolytope, k: int, strict: bool, collect: bool):
    """Count (or list) integer points of k P' where P' is P in lattice coordinates."""
    d = P.dim
    if d == 0:
        return [()] if collect else 1
    H = _projections(P)
    limit = config.budget().max_points
    seen = [0]
    out = []

    def step(j, prefixes):
        A, b = H[j + 1]
        rhs = k * b - (1 if strict else 0)
        R = rhs[:, None] - A[:, :j] @ prefixes.T if j else np.repeat(rhs[:, None], len(prefixes), axis=1)
        c = A[:, j]
        M = len(prefixes)
        hi = np.full(M, np.iinfo(np.int64).max // 4, dtype=np.int64)
        lo = np.full(M, -(np.iinfo(np.int64).max // 4), dtype=np.int64)
        ok = np.ones(M, dtype=bool)
        for r in range(len(c)):
            if c[r] > 0:
                hi = np.minimum(hi, np.floor_divide(R[r], c[r]))
            elif c[r] < 0:
                lo = np.maximum(lo, -np.floor_divide(-R[r], c[r]))
            else:
                ok &= R[r] >= 0
        cnt = np.where(ok, np.maximum(hi - lo + 1, 0), 0)
        if j == d - 1 and not collect:
            return int(cnt.sum())
        total = 0
        start = 0
        csum = np.cumsum(cnt)
        while start < M:
            base = csum[start - 1] if start else 0
            stop = int(np.searchsorted(csum, base + _CHUNK, side="right"))
            stop = max(stop, start + 1)
            sub = cnt[start:stop]
            n_new = int(sub.sum())
            if n_new:
                seen[0] += n_new
                if seen[0] > limit:
                    raise TooLarge(f"lattice-point enumeration exceeds budget {limit}")
                rep = np.repeat(np.arange(start, stop), sub)
                offs = np.arange(n_new) - np.repeat(np.cumsum(sub) - sub, sub)
                new = np.column_stack([prefixes[rep], lo[rep] + offs])
                if j == d - 1:
                    out.append(new)
                else:
                    total += step(j + 1, new)
            start = stop
        return total

    result = step(0, np.zeros((1, 0), dtype=np.int64))
    if collect:
        pts = np.concatenate(out) if out else np.zeros((0, d), dtype=np.int64)
        return [tuple(int(x) for x in row) for row in pts]
    return result


def count_lattice_points(P: QPolytope, k: int = 1, relint: bool = False) -> int:
    if k == 0:
        return 0 if relint and P.affine_dim > 0 else 1
    return _walk(P, k, relint, collect=False)


def lattice_points(P: QPolytope, k: int = 1, relint: bool = False) -> list:
    """Points of kP (or its relative interior) in the dilated designated lattice."""
    L = P.lattice
    pts = _walk(P, k, relint, collect=True)
    # z in lattice coordinates of kP corresponds to x = k * offset + z . G
    out = []
    for z in pts:
        out.append(tuple(q(k * L.offset[j] + sum(z[i] * L.generators[i][j] for i in range(P.dim))) for j in range(P.dim)))
    return sorted(out)


def lattice_points_naive(P: QPolytope, k: int = 1, relint: bool = False) -> int:
    """Bounding-box scan in lattice coordinates; oracle for tests."""
    from itertools import product

    c = lattice_coords(P)
    lo = [math.floor(min(v[i] for v in c.vertices) * k) for i in range(P.dim)]
    hi = [math.ceil(max(v[i] for v in c.vertices) * k) for i in range(P.dim)]
    count = 0
    for z in product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
        if all((dot(a, z) < k * rhs) if relint else (dot(a, z) <= k * rhs) for a, rhs in zip(c.A, c.b)):
            count += 1
    return count


# -------------------------------------------------------------------- Ehrhart

@dataclass(frozen=True)
class EhrhartPolynomial:
    coefficients: tuple  # constant term first

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, n):
        return q(sum(c * Fraction(n) ** i for i, c in enumerate(self.coefficients)))

    @property
    def normalized_volume(self):
        return q(self.coefficients[-1] * math.factorial(self.degree))

    def poly(self):
        import sympy

        n = sympy.Symbol("n")
        return sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c for c in self.coefficients])), n, domain="QQ")

    def __str__(self):
        return " + ".join(f"{c}*n^{i}" for i, c in enumerate(self.coefficients) if c) or "0"


def interpolate(values) -> tuple:
    """Coefficients (constant first) of the polynomial through (k, values[k]), k = 0.."""
    from .linalg import solve

    m = len(values)
    A = [[k**i for i in range(m)] for k in range(m)]
    coeffs = list(solve(A, values))
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def ehrhart(P: QPolytope) -> EhrhartPolynomial:
    P.require(v=True, h=True)
    if not is_lattice_polytope(P):
        raise NotLatticePolytope(f"{P.name or 'polytope'} has vertices outside its lattice")
    d = P.affine_dim
    if d != P.dim:
        raise Degenerate("Ehrhart polynomial needs a full-dimensional polytope in its lattice")
    values = [1] + [count_lattice_points(P, k) for k in range(1, d + 2)]
    coeffs = interpolate(values)
    if len(coeffs) - 1 != d:
        raise NotLatticePolytope("lattice-point counts are not polynomial of the polytope's degree")
    poly = EhrhartPolynomial(coeffs)
    if not isinstance(poly(d + 2), int):
        raise NotLatticePolytope("Ehrhart values fail to be integral")
    return poly


# --------------------------------------------------------------------- volume

def simplex_nvol(vertices, lattice: AffineLattice | None = None) -> int | Fraction:
    """Normalized volume |det| of the edge matrix in lattice coordinates."""
    vs = [lattice.to_coords(v) for v in vertices] if lattice is not None else [qvec(v) for v in vertices]
    p0 = vs[0]
    M = [[a - b for a, b in zip(v, p0)] for v in vs[1:]]
    if len(M) != len(p0):
        raise Degenerate("simplex must have ambient dimension + 1 vertices")
    v = abs(det(M))
    if v == 0:
        raise Degenerate("rank-deficient simplex")
    return v


def _barycentric(vs, x):
    from .linalg import solve

    d = len(x)
    A = [[vs[i][r] for i in range(d + 1)] for r in range(d)] + [[1] * (d + 1)]
    return solve(A, list(x) + [1])


def triangulation_nvol(simplices, lattice: AffineLattice | None = None, check_overlap: bool = True):
    """Sum of normalized volumes; optionally verifies that the barycentre of each
    simplex avoids the interiors of all others (a sampled disjointness check)."""
    total = 0
    for S in simplices:
        total += simplex_nvol(S, lattice)
    if check_overlap:
        for i, S in enumerate(simplices):
            d = len(S[0])
            bc = tuple(Fraction(sum(v[r] for v in S), d + 1) for r in range(d))
            for j, T in enumerate(simplices):
                if i != j:
                    lam = _barycentric(T, bc)
                    if lam is not None and all(x > 0 for x in lam):
                        raise Degenerate(f"simplices {i} and {j} overlap")
    return q(total)


def pulling_triangulation(P: QPolytope, order=None, FL: FaceLattice | None = None) -> list[int]:
    """Pulling triangulation as a list of vertex bitmasks.

    ``order`` is a sequence of vertex indices (earlier = pulled first)."""
    P.require(v=True, h=True)
    FL = FL or face_lattice(P)
    nverts = len(P.vertices)
    order = list(range(nverts)) if order is None else list(order)
    rank_of = [0] * nverts
    for r, v in enumerate(order):
        rank_of[v] = r
    memo = {}

    def pull(fi):
        if fi in memo:
            return memo[fi]
        S = FL.faces[fi]
        if S.bit_count() == FL.dims[fi] + 1:
            res = [S]
        else:
            v = min(bits(S), key=rank_of.__getitem__)
            res = []
            for ch in FL.children[fi]:
                G = FL.faces[ch]
                if not G >> v & 1:
                    res.extend(T | 1 << v for T in pull(ch))
        memo[fi] = res
        return res

    return pull(0)


def volume(P: QPolytope) -> Fraction | int:
    """Euclidean volume (full-dimensional polytopes) via a pulling triangulation."""
    if P.affine_dim != P.dim:
        return 0
    d = P.dim
    if d == 0:
        return 1
    total = 0
    for S in pulling_triangulation(P):
        vs = [P.vertices[i] for i in bits(S)]
        total += abs(det([[a - b for a, b in zip(v, vs[0])] for v in vs[1:]]))
    return q(Fraction(total, math.factorial(d)))


def normalized_volume(P: QPolytope, method: str = "triangulation"):
    """Normalized volume in lattice coordinates."""
    if method == "ehrhart":
        return ehrhart(P).normalized_volume
    c = lattice_coords(P)
    total = 0
    for S in pulling_triangulation(P):
        vs = [c.vertices[i] for i in bits(S)]
        total += abs(det([[a - b for a, b in zip(v, vs[0])] for v in vs[1:]]))
    return q(total)


# ----------------------------------------------------------- exact simplex LP

def lp_feasible(A, b) -> tuple | None:
    """A feasible x >= 0 with A x = b, or None (phase one simplex, Bland's rule)."""
    m = len(A)
    n = len(A[0]) if m else 0
    rows = []
    for i in range(m):
        r = [Fraction(x) for x in A[i]] + [Fraction(b[i])]
        if r[-1] < 0:
            r = [-x for x in r]
        rows.append(r)
    # tableau with artificials n..n+m-1
    T = [r[:-1] + [Fraction(int(i == k)) for k in range(m)] + [r[-1]] for i, r in enumerate(rows)]
    basis = [n + i for i in range(m)]
    cost = [Fraction(0)] * n + [Fraction(1)] * m + [Fraction(0)]
    obj = cost[:]
    for i in range(m):
        obj = [o - t for o, t in zip(obj, T[i])]
    width = n + m
    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        best, leave = None, None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][-1] / T[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            break
        piv = T[leave][enter]
        T[leave] = [x / piv for x in T[leave]]
        for i in range(m):
            if i != leave and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [x - f * y for x, y in zip(T[i], T[leave])]
        f = obj[enter]
        obj = [x - f * y for x, y in zip(obj, T[leave])]
        basis[leave] = enter
    if -obj[-1] != 0:
        return None
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = T[i][-1]
    return qvec(x)


def in_hull(p, points) -> bool:
    """Exact membership of p in conv(points)."""
    points = list(points)
    if not points:
        return False
    d = len(p)
    A = [[v[r] for v in points] for r in range(d)] + [[1] * len(points)]
    return lp_feasible(A, list(p) + [1]) is not None


def extreme_points(points) -> list:
    """Points that are not in the hull of the remaining ones (defensive check)."""
    pts = list(dict.fromkeys(qvec(p) for p in points))
    return [p for i, p in enumerate(pts) if not in_hull(p, pts[:i] + pts[i + 1 :])]


# -------------------------------------------------------------- serialization

def _num(x):
    x = Fraction(x)
    return [x.numerator, x.denominator]


def to_json(P: QPolytope) -> dict:
    out = {"name": P.name, "ambient_dim": P.dim}
    if P.vertices is not None:
        out["vertices"] = [[_num(x) for x in v] for v in P.vertices]
    if P.inequalities is not None:
        out["inequalities"] = [{"normal": [_num(x) for x in a], "rhs": _num(b)} for a, b in P.inequalities]
    out["lattice"] = {
        "generators": [[_num(x) for x in g] for g in P.lattice.generators],
        "offset": [_num(x) for x in P.lattice.offset],
    }
    return out


def from_json(data: dict) -> QPolytope:
    def num(x):
        return q(Fraction(x[0], x[1])) if isinstance(x, list) else q(Fraction(x))

    d = data["ambient_dim"]
    verts = tuple(tuple(num(x) for x in v) for v in data["vertices"]) if "vertices" in data else None
    ineqs = (
        tuple((tuple(num(x) for x in h["normal"]), num(h["rhs"])) for h in data["inequalities"])
        if "inequalities" in data
        else None
    )
    lat = None
    if "lattice" in data:
        lat = AffineLattice(
            tuple(tuple(num(x) for x in g) for g in data["lattice"]["generators"]),
            tuple(num(x) for x in data["lattice"]["offset"]),
        )
    return QPolytope(d, verts, ineqs, lat, name=data.get("name", ""))
