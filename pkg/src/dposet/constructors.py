"""Polytopes attached to posets, double posets and graphs.

Vertex lists come from the combinatorics (filters, antichains, stable sets);
inequality lists come from the matching facet descriptions. Every output can
be checked with geometry.validate.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import antiblocking as ab
from .errors import NotAntiBlocking, NotCompatible
from .geometry import AffineLattice, QPolytope, extreme_points, irredundant, is_face
from .graphs import Graph, cliques, is_perfect, maximal_cliques, stable_sets
from .linalg import affine_rank, dot, rank
from .poset import (
    DoublePoset,
    Poset,
    alternating_chains,
    antichains,
    bits,
    chains,
    filters,
    is_compatible,
    max_of,
    maximal_chains,
    min_of,
)


def indicator(mask: int, n: int, scale=1) -> tuple:
    return tuple(scale if mask >> i & 1 else 0 for i in range(n))


def double_lattice(n: int) -> AffineLattice:
    """2Z^n x (2Z + 1)."""
    return AffineLattice.diagonal([2] * (n + 1), (0,) * n + (1,))


def _unit(i, n, sign=1):
    return tuple(sign if j == i else 0 for j in range(n))


# ----------------------------------------------------------- single posets

def order_polytope(P: Poset) -> QPolytope:
    n = P.n
    F = filters(P)
    verts = [indicator(f, n) for f in F]
    ineqs, tags = [], []
    for a, b in P.covers():
        ineqs.append((tuple(1 if j == a else -1 if j == b else 0 for j in range(n)), 0))
        tags.append(("cover", P.elements[a], P.elements[b]))
    for b in bits(P.minimal()):
        ineqs.append((_unit(b, n, -1), 0))
        tags.append(("min", P.elements[b]))
    for a in bits(P.maximal()):
        ineqs.append((_unit(a, n), 1))
        tags.append(("max", P.elements[a]))
    return QPolytope(
        n, tuple(verts), tuple(ineqs),
        vertex_tags=tuple(("filter", P.labels(f)) for f in F),
        facet_tags=tuple(tags), name="order",
    )


def chain_polytope(P: Poset) -> QPolytope:
    n = P.n
    A = antichains(P)
    verts = [indicator(a, n) for a in A]
    ineqs = [(_unit(i, n, -1), 0) for i in range(n)]
    tags = [("nonneg", e) for e in P.elements]
    for C in maximal_chains(P):
        ineqs.append((indicator(C, n), 1))
        tags.append(("chain", P.labels(C)))
    return QPolytope(
        n, tuple(verts), tuple(ineqs),
        vertex_tags=tuple(("antichain", P.labels(a)) for a in A),
        facet_tags=tuple(tags), name="chain",
    )


def chain_antiblocking(P: Poset) -> ab.AntiBlockingPolytope:
    """C(P) as an anti-blocking polytope (generators: maximal antichains)."""
    n = P.n
    A = antichains(P)
    gens = ab.pareto_max(indicator(a, n) for a in A)
    normals = ab.pareto_max(indicator(c, n) for c in maximal_chains(P))
    return ab.AntiBlockingPolytope(n, tuple(gens), tuple(normals))


def stable_antiblocking(G: Graph) -> ab.AntiBlockingPolytope:
    """P_G for a perfect graph: maximal stable sets and maximal cliques."""
    n = G.n
    gens = ab.pareto_max(indicator(s, n) for s in stable_sets(G))
    normals = ab.pareto_max(indicator(c, n) for c in maximal_cliques(G))
    return ab.AntiBlockingPolytope(n, tuple(gens), tuple(normals))


# ----------------------------------------------------------- double posets

def double_order_polytope(dP: DoublePoset, hrep: bool | None = None) -> QPolytope:
    """TOrd(dP). Facets (one per alternating chain) only for compatible dP.

    hrep=None attaches facets when possible; hrep=True demands them."""
    n = dP.n
    Fp, Fm = filters(dP.plus), filters(dP.minus)
    verts = [indicator(f, n, 2) + (1,) for f in Fp] + [indicator(f, n, -2) + (-1,) for f in Fm]
    vtags = [("+", dP.plus.labels(f)) for f in Fp] + [("-", dP.minus.labels(f)) for f in Fm]
    ineqs = ftags = None
    compatible = bool(is_compatible(dP))
    if hrep and not compatible:
        raise NotCompatible("facet description of TOrd needs a compatible double poset")
    if compatible and hrep is not False:
        ineqs, ftags = [], []
        for C in alternating_chains(dP):
            ineqs.append((tuple(C.coefficients(n)) + (-C.sign,), 1))
            ftags.append(C)
    return QPolytope(
        n + 1, tuple(verts), None if ineqs is None else tuple(ineqs), double_lattice(n),
        vertex_tags=tuple(vtags), facet_tags=None if ftags is None else tuple(ftags), name="tord",
    )


def double_chain_polytope(dP: DoublePoset) -> QPolytope:
    """TChain(dP); one facet per chain of either order (the empty chain gives t = +-1)."""
    n = dP.n
    Ap, Am = antichains(dP.plus), antichains(dP.minus)
    verts = [indicator(a, n, 2) + (1,) for a in Ap] + [indicator(a, n, -2) + (-1,) for a in Am]
    vtags = [("+", dP.plus.labels(a)) for a in Ap] + [("-", dP.minus.labels(a)) for a in Am]
    ineqs, ftags = [], []
    for C in chains(dP.plus):
        ineqs.append((indicator(C, n) + (-1,), 1))
        ftags.append(("+", dP.plus.labels(C)))
    for C in chains(dP.minus):
        ineqs.append((indicator(C, n, -1) + (1,), 1))
        ftags.append(("-", dP.minus.labels(C)))
    return QPolytope(
        n + 1, tuple(verts), tuple(ineqs), double_lattice(n),
        vertex_tags=tuple(vtags), facet_tags=tuple(ftags), name="tchain",
    )


def reduced_order_polytope(dP: DoublePoset) -> QPolytope:
    """DOrd(dP): the height-0 slice of TOrd, with vertices from vertical edges."""
    if not is_compatible(dP):
        raise NotCompatible("DOrd is only described for compatible double posets")
    n = dP.n
    Pp, Pm = dP.plus, dP.minus
    verts, vtags = {}, {}
    for Fp in filters(Pp):
        for Fm in filters(Pm):
            if min_of(Pp, Fp) & min_of(Pm, Fm):
                continue
            if max_of(Pp, Pp.full & ~Fp) & max_of(Pm, Pm.full & ~Fm):
                continue
            v = tuple(int(Fp >> i & 1) - int(Fm >> i & 1) for i in range(n))
            if v not in verts:
                verts[v] = None
                vtags[v] = (Pp.labels(Fp), Pm.labels(Fm))
    ineqs, ftags = [], []
    for C in alternating_chains(dP):
        if C.proper:
            ineqs.append((tuple(C.coefficients(n)), 1))
            ftags.append(C)
    V = sorted(verts)
    return QPolytope(
        n, tuple(V), tuple(ineqs), vertex_tags=tuple(vtags[v] for v in V), facet_tags=tuple(ftags), name="dord"
    )


def reduced_chain_polytope(dP: DoublePoset) -> QPolytope:
    """DChain(dP) = C(P+) - C(P-) through the anti-blocking calculus."""
    D = ab.difference(chain_antiblocking(dP.plus), chain_antiblocking(dP.minus), name="dchain")
    return D


def reduced_polytopes(dP: DoublePoset) -> tuple[QPolytope, QPolytope]:
    return reduced_order_polytope(dP), reduced_chain_polytope(dP)


# ------------------------------------------------------------------- graphs

def stable_set_polytope(G: Graph) -> QPolytope:
    """P_G; clique inequalities are attached only for perfect graphs."""
    n = G.n
    S = stable_sets(G)
    verts = [indicator(s, n) for s in S]
    perfect = is_perfect(G)
    ineqs = tags = None
    if perfect:
        ineqs = [(_unit(i, n, -1), 0) for i in range(n)]
        tags = [("nonneg", v) for v in G.nodes]
        for C in maximal_cliques(G):
            ineqs.append((indicator(C, n), 1))
            tags.append(("clique", tuple(G.nodes[i] for i in bits(C))))
    P = QPolytope(
        n, tuple(verts), None if ineqs is None else tuple(ineqs),
        vertex_tags=tuple(("stable", tuple(G.nodes[i] for i in bits(s))) for s in S),
        facet_tags=None if tags is None else tuple(tags), name="stable",
    )
    P.meta["perfect"] = perfect
    return P


def double_graph_polytope(Gp: Graph, Gm: Graph) -> QPolytope:
    """conv(2 P_{G+} x {1}  u  -2 P_{G-} x {-1}); clique facets when both are perfect."""
    n = Gp.n
    Sp, Sm = stable_sets(Gp), stable_sets(Gm)
    verts = [indicator(s, n, 2) + (1,) for s in Sp] + [indicator(s, n, -2) + (-1,) for s in Sm]
    ineqs = None
    perfect = is_perfect(Gp) and is_perfect(Gm)
    if perfect:
        ineqs = [(indicator(C, n) + (-1,), 1) for C in cliques(Gp)]
        ineqs += [(indicator(C, n, -1) + (1,), 1) for C in cliques(Gm)]
    P = QPolytope(n + 1, tuple(verts), None if ineqs is None else tuple(ineqs), double_lattice(n), name="double-graph")
    P.meta["perfect"] = perfect
    return P


def hansen(G: Graph) -> QPolytope:
    P = double_graph_polytope(G, G)
    return P.with_(name="hansen")


# ------------------------------------------------------------- valuations

def valuation_polytope(P: Poset) -> QPolytope:
    """Polytope of functions h with 0 <= h(F) <= 1 on every filter F.

    Vertices are the alternating-sign indicator vectors of chains, with the
    top element of the chain carrying +1."""
    n = P.n
    verts, vtags = [], []
    for C in chains(P):
        order = sorted(bits(C), key=lambda i: P.down[i].bit_count())
        v = [0] * n
        for pos, a in enumerate(reversed(order)):
            v[a] = (-1) ** pos
        verts.append(tuple(v))
        vtags.append(("chain", P.labels(C)))
    ineqs, tags = [], []
    for F in filters(P):
        if F:
            ineqs.append((indicator(F, n), 1))
            tags.append(("upper", P.labels(F)))
            ineqs.append((indicator(F, n, -1), 0))
            tags.append(("lower", P.labels(F)))
    ineqs, tags = irredundant(verts, ineqs, tags)
    return QPolytope(n, tuple(verts), tuple(ineqs), vertex_tags=tuple(vtags), facet_tags=tuple(tags), name="valuation")


def symmetric_valuation_polytope(P: Poset) -> QPolytope:
    """Functions h with -1 <= h(F) <= 1 on every filter; equals ValP - ValP."""
    n = P.n
    V = valuation_polytope(P).vertices
    ineqs = []
    for F in filters(P):
        if F:
            ineqs.append((indicator(F, n), 1))
            ineqs.append((indicator(F, n, -1), 1))
    cands = {tuple(a - b for a, b in zip(u, w)) for u in V for w in V}
    verts = sorted(v for v in cands if rank([a for a, b in ineqs if dot(a, v) == b]) == n)
    ineqs = irredundant(verts, ineqs)
    return QPolytope(n, tuple(verts), tuple(ineqs), name="valuation-pm")


def twisted_prism(Q: QPolytope) -> QPolytope:
    """conv(Q x {1}  u  -Q x {-1})."""
    Q.require(v=True)
    verts = [v + (1,) for v in Q.vertices] + [tuple(-x for x in v) + (-1,) for v in Q.vertices]
    return QPolytope(Q.dim + 1, tuple(verts), name=f"twisted-prism({Q.name})")


def negate(Q: QPolytope) -> QPolytope:
    verts = None if Q.vertices is None else tuple(tuple(-x for x in v) for v in Q.vertices)
    ineqs = None if Q.inequalities is None else tuple((tuple(-x for x in a), b) for a, b in Q.inequalities)
    return QPolytope(Q.dim, verts, ineqs, name=f"-{Q.name}")


def gamma(P: QPolytope, Q: QPolytope) -> QPolytope:
    """conv(P u -Q) as a vertex list.

    For two anti-blocking polytopes the vertices are all vertices of both
    except the origin; otherwise the union is pruned by exact LP."""
    P.require(v=True)
    Q.require(v=True)
    neg = [tuple(-x for x in v) for v in Q.vertices]
    try:
        if not (ab.is_antiblocking(P) and ab.is_antiblocking(Q)):
            raise NotAntiBlocking("vertex shortcut needs anti-blocking inputs")
        zero = (0,) * P.dim
        verts = sorted((set(P.vertices) | set(neg)) - {zero})
    except NotAntiBlocking:
        verts = sorted(extreme_points(list(P.vertices) + neg))
    return QPolytope(P.dim, tuple(verts), name=f"gamma({P.name},{Q.name})")


def gamma_order(P: Poset) -> QPolytope:
    """Gamma(O(P), O(P)) with facets read off the vertices of ValP - ValP."""
    O = order_polytope(P)
    G = gamma(O, O)
    facets = tuple((v, 1) for v in symmetric_valuation_polytope(P).vertices)
    return G.with_(inequalities=facets, name="gamma-order")


# --------------------------------------------------------------- face test

@dataclass(frozen=True)
class FaceTest:
    is_face: bool
    dimension: int | None
    reason: str = ""


def is_embedded_sublattice(P: Poset, L) -> bool:
    """F u F' and F n F' lie in L exactly when F and F' do (all filter pairs)."""
    L = set(L)
    B = filters(P)
    for i, F in enumerate(B):
        for G in B[i:]:
            if ((F | G) in L and (F & G) in L) != (F in L and G in L):
                return False
    return True


def _subsets(mask):
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def is_cooperating(dP: DoublePoset, Lplus, Lminus) -> bool:
    """Removing common minimal elements, or adding common maximal elements of the
    complements, keeps every pair (F+, F-) inside the two sets."""
    Pp, Pm = dP.plus, dP.minus
    Lp, Lm = set(Lplus), set(Lminus)
    for Fp in Lp:
        for Fm in Lm:
            for A in _subsets(min_of(Pp, Fp) & min_of(Pm, Fm)):
                if (Fp & ~A) not in Lp or (Fm & ~A) not in Lm:
                    return False
            for B in _subsets(max_of(Pp, Pp.full & ~Fp) & max_of(Pm, Pm.full & ~Fm)):
                if (Fp | B) not in Lp or (Fm | B) not in Lm:
                    return False
    return True


def noninterfering_size(dP: DoublePoset, Lplus, Lminus) -> int:
    """Largest |C+| + |C-| over non-interfering pairs of filter chains inside L."""
    Pp, Pm = dP.plus, dP.minus

    def chains_in(L):
        out = [()]
        for F in sorted(L, key=lambda m: (m.bit_count(), m)):
            out += [c + (F,) for c in out if not c or (c[-1] & F == c[-1] and c[-1] != F)]
        return out

    mins_p = {F: min_of(Pp, F) for F in Lplus}
    mins_m = {F: min_of(Pm, F) for F in Lminus}
    best = 0
    for a in chains_in(Lplus):
        ma = 0
        for F in a:
            ma |= mins_p[F]
        for b in chains_in(Lminus):
            if len(a) + len(b) > best and not any(ma & mins_m[G] for G in b):
                best = len(a) + len(b)
    return best


def sublattice_face_test(dP: DoublePoset, Lplus, Lminus) -> FaceTest:
    """Decide whether the TOrd vertices tagged by the two filter sets span a face.

    Filters are bitmasks over the ground set."""
    if not is_compatible(dP):
        raise NotCompatible("face test needs a compatible double poset")
    Lp, Lm = frozenset(Lplus), frozenset(Lminus)
    if not is_embedded_sublattice(dP.plus, Lp):
        return FaceTest(False, None, "plus side is not an embedded sublattice")
    if not is_embedded_sublattice(dP.minus, Lm):
        return FaceTest(False, None, "minus side is not an embedded sublattice")
    if not is_cooperating(dP, Lp, Lm):
        return FaceTest(False, None, "the two sides do not cooperate")
    return FaceTest(True, noninterfering_size(dP, Lp, Lm) - 1)


def face_test_polytope(dP: DoublePoset, Lplus, Lminus) -> FaceTest:
    """Same question answered by closure in the vertex-facet incidences of TOrd."""
    T = _tord_cache(dP)
    idx = T.meta["vertex_index"]
    S = 0
    for F in Lplus:
        S |= 1 << idx[("+", F)]
    for F in Lminus:
        S |= 1 << idx[("-", F)]
    if not is_face(T, S):
        return FaceTest(False, None, "vertex set is not closed")
    return FaceTest(True, affine_rank([T.vertices[i] for i in bits(S)]))


_TORD = {}


def _tord_cache(dP):
    key = (dP.plus, dP.minus)
    if key not in _TORD:
        T = double_order_polytope(dP, hrep=True)
        Fp, Fm = filters(dP.plus), filters(dP.minus)
        idx = {("+", F): i for i, F in enumerate(Fp)}
        idx.update({("-", F): len(Fp) + i for i, F in enumerate(Fm)})
        T.meta["vertex_index"] = idx
        _TORD[key] = T
    return _TORD[key]


__all__ = [
    "FaceTest",
    "face_test_polytope",
    "is_cooperating",
    "is_embedded_sublattice",
    "noninterfering_size",
    "chain_antiblocking",
    "chain_polytope",
    "double_chain_polytope",
    "double_graph_polytope",
    "double_lattice",
    "double_order_polytope",
    "gamma",
    "gamma_order",
    "hansen",
    "indicator",
    "negate",
    "order_polytope",
    "reduced_chain_polytope",
    "reduced_order_polytope",
    "reduced_polytopes",
    "stable_antiblocking",
    "stable_set_polytope",
    "sublattice_face_test",
    "symmetric_valuation_polytope",
    "twisted_prism",
    "valuation_polytope",
]
