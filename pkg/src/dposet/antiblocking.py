"""Anti-blocking polytopes: down-closed polytopes in the nonnegative orthant.

An anti-blocking polytope is stored through two finite sets of nonnegative
vectors: ``generators`` (the componentwise-maximal vertices, whose down-hull
is the polytope) and ``normals`` (the componentwise-maximal vertices of the
associated polytope A(P), so that P = {x >= 0 : <d, x> <= 1}).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from math import lcm

from . import config
from .errors import NegativeCoordinate, NotDualIntegral, NotFullDimensional, NotLatticePolytope
from .geometry import (
    AffineLattice,
    EhrhartPolynomial,
    QPolytope,
    count_lattice_points,
    ehrhart,
    interpolate,
    irredundant,
    volume,
)
from .linalg import dot, q, qvec, rank, solve
from .poset import bits


def _leq(u, v) -> bool:
    return all(a <= b for a, b in zip(u, v))


def pareto_max(points) -> list:
    pts = sorted(set(qvec(p) for p in points))
    return [p for p in pts if not any(o != p and _leq(p, o) for o in pts)]


def down_vertices(n: int, normals) -> list:
    """All vertices of {x >= 0 : <d, x> <= 1 for d in normals}.

    Enumerates supports J and square subsystems on J; exact."""
    return list(_down_vertices(n, tuple(qvec(d) for d in normals)))


def _integral(d) -> tuple:
    # scale <d, x> <= 1 to an integral row and right-hand side
    s = lcm(*(Fraction(x).denominator for x in d))
    return [int(x * s) for x in d], s


def _maximal(rows) -> list:
    # a row below another one is redundant for x >= 0
    return [d for d in rows if not any(e != d and all(a >= b for a, b in zip(e, d)) for e in rows)]


@lru_cache(maxsize=8192)
def _down_vertices(n: int, normals: tuple) -> tuple:
    if n == 0:
        return ((),)
    out = {(0,) * n}
    limit = config.budget().max_items
    work = 0
    for size in range(1, n + 1):
        for J in combinations(range(n), size):
            useful = [_integral(d) for d in _maximal({tuple(d[j] for j in J) for d in normals} - {(0,) * size})]
            for rows in combinations(useful, size):
                work += 1
                config.check(work, limit * 4, "anti-blocking vertex enumeration")
                sol = solve([d for d, _ in rows], [s for _, s in rows])
                if sol is None or any(x <= 0 for x in sol):
                    continue
                x = [0] * n
                for j, v in zip(J, sol):
                    x[j] = v
                x = tuple(x)
                if all(dot(d, x) <= 1 for d in normals):
                    out.add(x)
    return tuple(sorted(out))


def _vertex_of(x, n, normals) -> bool:
    tight = [d for d in normals if dot(d, x) == 1]
    tight += [tuple(int(i == j) for j in range(n)) for i in range(n) if x[i] == 0]
    return rank(tight) == n


@dataclass(frozen=True)
class AntiBlockingPolytope:
    n: int
    generators: tuple
    normals: tuple

    @cached_property
    def vertices(self) -> list:
        return down_vertices(self.n, self.normals)

    def contains(self, x) -> bool:
        return all(v >= 0 for v in x) and all(dot(d, x) <= 1 for d in self.normals)

    def key(self):
        return (self.n, self.generators, self.normals)

    def inequalities(self):
        ineqs = [(tuple(-int(i == j) for j in range(self.n)), 0) for i in range(self.n)]
        ineqs += [(d, 1) for d in self.normals]
        return ineqs

    def to_qpolytope(self, name="", lattice=None) -> QPolytope:
        verts = self.vertices
        ineqs = irredundant(verts, self.inequalities())
        return QPolytope(self.n, tuple(verts), tuple(ineqs), lattice, name=name or "antiblocking")

    def scaled(self, k) -> "AntiBlockingPolytope":
        k = Fraction(k)
        return AntiBlockingPolytope(
            self.n,
            tuple(qvec(x * k for x in c) for c in self.generators),
            tuple(qvec(x / k for x in d) for d in self.normals),
        )


def _full_dim(n, points):
    covered = 0
    for p in points:
        for i, x in enumerate(p):
            if x:
                covered |= 1 << i
    if covered != (1 << n) - 1:
        raise NotFullDimensional("some coordinate vanishes on every point")


def from_vrep(points, n: int | None = None) -> AntiBlockingPolytope:
    """Anti-blocking polytope generated (as a down-hull) by the given points."""
    points = [qvec(p) for p in points]
    if n is None:
        n = len(points[0])
    if n == 0:
        return AntiBlockingPolytope(0, ((),), ((),))
    if any(x < 0 for p in points for x in p):
        raise NegativeCoordinate("anti-blocking polytopes live in the nonnegative orthant")
    _full_dim(n, points)
    cands = pareto_max(points)
    normals = pareto_max(down_vertices(n, cands))
    gens = tuple(p for p in cands if _vertex_of(p, n, normals))
    return AntiBlockingPolytope(n, gens, tuple(normals))


def from_hrep(normals, n: int | None = None) -> AntiBlockingPolytope:
    return associated(from_vrep(normals, n))


def associated(P: AntiBlockingPolytope) -> AntiBlockingPolytope:
    """A(P): the roles of generators and normals swap."""
    if P.n:
        _full_dim(P.n, P.generators)
    return AntiBlockingPolytope(P.n, P.normals, P.generators)


def is_antiblocking(P: QPolytope) -> bool:
    """Nonnegative vertices and the down-closure adds no vertices."""
    P.require(v=True)
    if any(x < 0 for v in P.vertices for x in v):
        return False
    try:
        A = from_vrep(P.vertices, P.dim)
    except NotFullDimensional:
        return False
    return set(A.vertices) == set(P.vertices)


def restrict(P: AntiBlockingPolytope, J) -> AntiBlockingPolytope:
    """The face P|_J viewed inside R^J (coordinates in increasing order of J)."""
    return _restrict(P, tuple(sorted(J)))


@lru_cache(maxsize=8192)
def _restrict(P: AntiBlockingPolytope, J: tuple) -> AntiBlockingPolytope:
    if not J:
        return AntiBlockingPolytope(0, ((),), ((),))
    return from_vrep([tuple(c[j] for j in J) for c in P.generators], len(J))


def is_dual_integral(P: AntiBlockingPolytope) -> bool:
    return all(isinstance(x, int) for d in P.normals for x in d)


# ------------------------------------------------------ Cayley and differences

def cayley(P1: AntiBlockingPolytope, P2: AntiBlockingPolytope, scale=1, lattice=None, name="") -> QPolytope:
    """conv(scale*P1 x {1}  u  -scale*P2 x {-1}) with its facet description."""
    n = P1.n
    if P2.n != n:
        raise NotFullDimensional("dimensions differ")
    for P in (P1, P2):
        if n:
            _full_dim(n, P.generators)
    s = q(scale)
    verts = [tuple(s * x for x in v) + (1,) for v in P1.vertices]
    verts += [tuple(-s * x for x in v) + (-1,) for v in P2.vertices]
    c = q(Fraction(2) / s)
    ineqs = [((0,) * n + (1,), 1), ((0,) * n + (-1,), 1)]
    tags = [("top",), ("bottom",)]
    for d in down_vertices(n, P1.generators):
        if any(d):
            ineqs.append((tuple(c * x for x in d) + (-1,), 1))
            tags.append(("plus", d))
    for d in down_vertices(n, P2.generators):
        if any(d):
            ineqs.append((tuple(-c * x for x in d) + (1,), 1))
            tags.append(("minus", d))
    if lattice is None:
        lattice = AffineLattice.diagonal([s] * n + [2], (0,) * n + (1,))
    return QPolytope(n + 1, tuple(verts), tuple(ineqs), lattice, facet_tags=tuple(tags), name=name or "cayley")


def difference(P1: AntiBlockingPolytope, P2: AntiBlockingPolytope, a=1, b=1, name="") -> QPolytope:
    """a*P1 - b*P2 with facets from the vertices of A(P1) and A(P2)."""
    n = P1.n
    ineqs, tags = [], []
    for d in down_vertices(n, P1.generators):
        if any(d):
            ineqs.append((d, a))
            tags.append(("plus", d))
    for d in down_vertices(n, P2.generators):
        if any(d):
            ineqs.append((tuple(-x for x in d), b))
            tags.append(("minus", d))
    cands = {tuple(a * x - b * y for x, y in zip(u, w)) for u in P1.vertices for w in P2.vertices}
    verts = sorted(v for v in cands if _tight_rank(v, ineqs) == n)
    return QPolytope(n, tuple(verts), tuple(ineqs), facet_tags=tuple(tags), name=name or "difference")


def _tight_rank(v, ineqs) -> int:
    return rank([a for a, b in ineqs if dot(a, v) == b])


def cayley_and_minkowski(P1, P2, scale=1, lattice=None) -> dict:
    return {"cayley": cayley(P1, P2, scale, lattice), "diff": difference(P1, P2)}


@dataclass(frozen=True)
class Cell:
    J: tuple
    polytope: QPolytope
    first: AntiBlockingPolytope  # P1|_J
    second: AntiBlockingPolytope  # P2|_{J^c}

    def join(self, n: int) -> QPolytope:
        """The Cayley cell P1|_J * P2|_{J^c} inside R^n x R."""
        verts = [_embed(u, self.J, n) + (1,) for u in self.first.vertices]
        comp = tuple(j for j in range(n) if j not in self.J)
        verts += [tuple(-x for x in _embed(w, comp, n)) + (-1,) for w in self.second.vertices]
        return QPolytope(n + 1, tuple(verts), name=f"join{self.J}")


def _embed(u, J, n):
    x = [0] * n
    for j, v in zip(J, u):
        x[j] = v
    return tuple(x)


def canonical_subdivision(P1: AntiBlockingPolytope, P2: AntiBlockingPolytope) -> list[Cell]:
    """The cells P1|_J - P2|_{J^c}, one per subset J of coordinates."""
    n = P1.n
    cells = []
    for size in range(n + 1):
        for J in combinations(range(n), size):
            comp = tuple(j for j in range(n) if j not in J)
            R1, R2 = restrict(P1, J), restrict(P2, comp)
            verts = sorted(
                {tuple(a - b for a, b in zip(_embed(u, J, n), _embed(w, comp, n))) for u in R1.vertices for w in R2.vertices}
            )
            ineqs = []
            for j in range(n):
                sign = -1 if j in J else 1
                ineqs.append((tuple(sign * int(i == j) for i in range(n)), 0))
            if J:
                ineqs += [(_embed(d, J, n), 1) for d in R1.normals]
            if comp:
                ineqs += [(tuple(-x for x in _embed(d, comp, n)), 1) for d in R2.normals]
            ineqs = irredundant(verts, ineqs)
            cells.append(Cell(J, QPolytope(n, tuple(verts), tuple(ineqs), name=f"cell{J}"), R1, R2))
    return cells


def ab_volume(P: AntiBlockingPolytope):
    """Euclidean volume (1 for the zero-dimensional polytope)."""
    if P.n == 0:
        return 1
    return volume(P.to_qpolytope())


def volume_via_cells(P1, P2):
    total = 0
    for c in canonical_subdivision(P1, P2):
        total += ab_volume(c.first) * ab_volume(c.second)
    return q(total)


# --------------------------------------------------------- lattice-point counts

def _count(P: AntiBlockingPolytope, k: int, relint: bool) -> int:
    if P.n == 0:
        return 1
    return count_lattice_points(P.to_qpolytope(), k, relint=relint)


def lattice_count_diff(P1, P2, a: int, b: int) -> int:
    """|(a P1 - b P2) ∩ Z^n| summed over the canonical cells."""
    if not is_dual_integral(P1):
        raise NotDualIntegral("the first polytope must have integral normals")
    n = P1.n
    total = 0
    for size in range(n + 1):
        for J in combinations(range(n), size):
            comp = tuple(j for j in range(n) if j not in J)
            total += _count(restrict(P1, J), a + 1, True) * _count(restrict(P2, comp), b, False)
    return total


def lattice_count_diff_direct(P1, P2, a: int, b: int) -> int:
    if a == 0 and b == 0:
        return 1
    D = difference(P1, P2, a, b)
    return count_lattice_points(D, 1)


@lru_cache(maxsize=4096)
def _ehr(P: AntiBlockingPolytope):
    if P.n == 0:
        return lambda k: 1
    Q = P.to_qpolytope()
    if not all(isinstance(x, int) for v in Q.vertices for x in v):
        raise NotLatticePolytope("restriction has non-integral vertices")
    return ehrhart(Q)


def _restricted_ehr(P1, P2):
    n = P1.n
    out = []
    for size in range(n + 1):
        for J in combinations(range(n), size):
            comp = tuple(j for j in range(n) if j not in J)
            out.append((len(J), _ehr(restrict(P1, J)), _ehr(restrict(P2, comp))))
    return out


def ehrhart_diff(P1, P2) -> EhrhartPolynomial:
    """Signed sum of restricted Ehrhart polynomials counting P1 - P2."""
    if not is_dual_integral(P1):
        raise NotDualIntegral("the first polytope must have integral normals")
    terms = _restricted_ehr(P1, P2)
    n = P1.n
    values = [sum((-1) ** j * e1(-k - 1) * e2(k) for j, e1, e2 in terms) for k in range(n + 2)]
    return EhrhartPolynomial(interpolate(values))


def ehrhart_cayley(P1, P2) -> EhrhartPolynomial:
    """Ehrhart polynomial of conv(2P1 x {1} u -2P2 x {-1}) in Z^{n+1}."""
    if not is_dual_integral(P1):
        raise NotDualIntegral("the first polytope must have integral normals")
    terms = _restricted_ehr(P1, P2)
    n = P1.n
    values = [
        sum((-1) ** j * sum(e1(s - k - 1) * e2(k + s) for s in range(-k, k + 1)) for j, e1, e2 in terms)
        for k in range(n + 3)
    ]
    return EhrhartPolynomial(interpolate(values))


def random_antiblocking(rng, n: int, r: int, grid: int = 3) -> AntiBlockingPolytope:
    """Down-hull of r random grid points plus one positive multiple of each unit vector."""
    pts = []
    for _ in range(r):
        pts.append(tuple(Fraction(rng.randint(0, grid), grid) for _ in range(n)))
    for i in range(n):
        pts.append(tuple(Fraction(rng.randint(1, grid), grid) if j == i else 0 for j in range(n)))
    return from_vrep(pts, n)


__all__ = [
    "AntiBlockingPolytope",
    "Cell",
    "ab_volume",
    "associated",
    "canonical_subdivision",
    "cayley",
    "cayley_and_minkowski",
    "difference",
    "down_vertices",
    "ehrhart_cayley",
    "ehrhart_diff",
    "from_hrep",
    "from_vrep",
    "is_antiblocking",
    "is_dual_integral",
    "lattice_count_diff",
    "lattice_count_diff_direct",
    "random_antiblocking",
    "restrict",
    "volume_via_cells",
]
