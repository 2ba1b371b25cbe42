"""Transfer maps and the canonical flag triangulations they induce.

Points are tuples indexed like the ground set of the poset. All maps are
exact on rational input.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import networkx as nx

from .constructors import double_lattice, indicator
from .errors import NotCompatible
from .geometry import simplex_nvol
from .linalg import q, qvec
from .poset import DoublePoset, Poset, bits, filters, is_compatible, min_of


def _topological(P: Poset) -> list[int]:
    return sorted(range(P.n), key=lambda i: P.down[i].bit_count())


def transfer(P: Poset, f) -> tuple:
    """(Phi f)(b) = min f(b) - f(a) over a < b, with a virtual bottom valued 0."""
    f = qvec(f)
    out = []
    for b in range(P.n):
        vals = [f[b]] + [f[b] - f[a] for a in bits(P.strict_down(b))]
        out.append(min(vals))
    return tuple(out)


def inverse_transfer(P: Poset, g) -> tuple:
    """Largest chain sum of g over chains a_0 < ... < a_k <= b (the empty chain counts 0).

    The chain may stop strictly below b."""
    g = qvec(g)
    h = [0] * P.n
    for b in _topological(P):
        below = max((h[a] for a in bits(P.strict_down(b))), default=0)
        r = max(below, 0)
        h[b] = max(r, g[b] + r)
    return tuple(q(x) for x in h)


def split(g) -> tuple[tuple, tuple]:
    """g = g+ - g- with nonnegative parts of disjoint support."""
    g = qvec(g)
    return tuple(max(x, 0) for x in g), tuple(max(-x, 0) for x in g)


def psi(dP: DoublePoset, g) -> tuple:
    gp, gm = split(g)
    a = inverse_transfer(dP.plus, gp)
    b = inverse_transfer(dP.minus, gm)
    return tuple(q(x - y) for x, y in zip(a, b))


def psi_inverse(dP: DoublePoset, f, extension=None) -> tuple:
    """Invert psi one element at a time along a common linear extension."""
    comp = is_compatible(dP)
    if not comp:
        raise NotCompatible("psi is only invertible for compatible double posets")
    order = extension if extension is not None else [dP.plus.index[x] for x in comp.extension]
    f = qvec(f)
    g = [0] * dP.n
    hp = [0] * dP.n
    hm = [0] * dP.n
    for a in order:
        r = max([0] + [hp[c] for c in bits(dP.plus.strict_down(a))])
        s = max([0] + [hm[c] for c in bits(dP.minus.strict_down(a))])
        g[a] = f[a] - r + s
        hp[a] = max(g[a], 0) + r
        hm[a] = max(-g[a], 0) + s
    return tuple(q(x) for x in g)


def psi_lift(dP: DoublePoset, point) -> tuple:
    return psi(dP, point[:-1]) + (point[-1],)


def psi_lift_inverse(dP: DoublePoset, point) -> tuple:
    return psi_inverse(dP, point[:-1]) + (point[-1],)


# ----------------------------------------------------- non-interfering complex

@dataclass(frozen=True)
class SimplicialComplexNI:
    """Pairs of filter chains, one from each side, with disjoint min-sets across sides."""

    dP: DoublePoset
    vertices: tuple  # (sign, filter mask)
    cells: tuple  # maximal faces as bitmasks over vertices

    @property
    def n_cells(self) -> int:
        return len(self.cells)

    @cached_property
    def dimension(self) -> int:
        return max(c.bit_count() for c in self.cells) - 1

    def is_face(self, S: int) -> bool:
        return any(S & c == S for c in self.cells)

    def minimal_nonfaces(self, max_size: int = 3) -> list[int]:
        nv = len(self.vertices)
        out = []
        for k in range(1, max_size + 1):
            for combo in combinations(range(nv), k):
                S = sum(1 << i for i in combo)
                if not self.is_face(S) and all(self.is_face(S & ~(1 << i)) for i in combo):
                    out.append(S)
        return out

    def is_flag(self) -> bool:
        """Every clique of the 1-skeleton is a face (no minimal non-face of size > 2)."""
        G = nx.Graph()
        G.add_nodes_from(range(len(self.vertices)))
        for c in self.cells:
            G.add_edges_from(combinations(bits(c), 2))
        for K in nx.find_cliques(G):
            if not self.is_face(sum(1 << i for i in K)):
                return False
        return True

    def realize(self, which: str) -> list[tuple]:
        """Vertex coordinates of every cell inside TChain or TOrd."""
        n = self.dP.n
        coords = []
        for s, F in self.vertices:
            P = self.dP.side(s)
            S = min_of(P, F) if which == "tchain" else F
            coords.append(indicator(S, n, 2 * s) + (s,))
        return [tuple(coords[i] for i in bits(c)) for c in self.cells]


def non_interfering_complex(dP: DoublePoset) -> SimplicialComplexNI:
    verts = [(1, F) for F in filters(dP.plus)] + [(-1, F) for F in filters(dP.minus)]
    mins = [min_of(dP.side(s), F) for s, F in verts]
    G = nx.Graph()
    G.add_nodes_from(range(len(verts)))
    for i, j in combinations(range(len(verts)), 2):
        (si, Fi), (sj, Fj) = verts[i], verts[j]
        if si == sj:
            ok = Fi & Fj in (Fi, Fj)
        else:
            ok = not mins[i] & mins[j]
        if ok:
            G.add_edge(i, j)
    cells = sorted(sum(1 << i for i in K) for K in nx.find_cliques(G))
    return SimplicialComplexNI(dP, tuple(verts), tuple(cells))


def triangulate(dP: DoublePoset, which: str = "tchain") -> list[tuple]:
    if which == "tord" and not is_compatible(dP):
        raise NotCompatible("the non-interfering complex triangulates TOrd only for compatible double posets")
    if which not in ("tchain", "tord"):
        raise ValueError(f"unknown polytope {which!r}")
    return non_interfering_complex(dP).realize(which)


def cell_volumes(dP: DoublePoset, simplices) -> list:
    L = double_lattice(dP.n)
    return [simplex_nvol(S, L) for S in simplices]


def canonical_order_triangulation(P: Poset, chain_side: bool = False) -> list[tuple]:
    """One simplex conv(1_F : F in C) per maximal chain C of filters.

    With chain_side the vertices are the transferred points 1_min(F) in C(P)."""
    F = filters(P)
    up = {f: [g for g in F if g & f == f and (g & ~f).bit_count() == 1] for f in F}
    out = []
    stack = [(0,)]
    while stack:
        ch = stack.pop()
        nxt = up[ch[-1]]
        if not nxt:
            pts = [min_of(P, f) if chain_side else f for f in ch]
            out.append(tuple(indicator(m, P.n) for m in pts))
        else:
            stack.extend(ch + (g,) for g in nxt)
    return sorted(out)


__all__ = [
    "SimplicialComplexNI",
    "canonical_order_triangulation",
    "cell_volumes",
    "inverse_transfer",
    "non_interfering_complex",
    "psi",
    "psi_inverse",
    "psi_lift",
    "psi_lift_inverse",
    "split",
    "transfer",
    "triangulate",
]
