"""Toric ideals of Hibi type: binomial bases, reduction and Buchberger checks.

Variables are pairs (sign, mask). For the order-polytope ideals the mask is a
filter; for the chain-polytope ideal it is an antichain. Plus variables are
ordered before minus variables, and within one side by the canonical subset
order of the generated filter, which refines inclusion. Monomials are sorted
tuples of (variable, exponent) pairs; polynomials are dicts monomial -> int.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, combinations_with_replacement

import networkx as nx

from . import config
from .errors import NonTerminating, NotCompatible, UnknownFilterVariable
from .poset import (
    DoublePoset,
    Poset,
    antichains,
    bits,
    filter_generated,
    filters,
    induced_double,
    is_compatible,
    max_of,
    min_of,
    subset_key,
)


def monomial(*variables) -> tuple:
    exps = {}
    for v in variables:
        exps[v] = exps.get(v, 0) + 1
    return tuple(sorted(exps.items()))


def _mul(a: tuple, b: tuple) -> tuple:
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def _divides(a: tuple, b: tuple) -> bool:
    eb = dict(b)
    return all(eb.get(v, 0) >= e for v, e in a)


def _quotient(b: tuple, a: tuple) -> tuple:
    exps = dict(b)
    for v, e in a:
        exps[v] -= e
    return tuple(sorted((v, e) for v, e in exps.items() if e))


def _lcm(a: tuple, b: tuple) -> tuple:
    exps = dict(a)
    for v, e in b:
        exps[v] = max(exps.get(v, 0), e)
    return tuple(sorted(exps.items()))


@dataclass(frozen=True)
class MonomialOrder:
    """Degree reverse lexicographic order from a rank on the variables."""

    rank: dict  # variable -> position, smaller = smaller variable

    def greater(self, a: tuple, b: tuple) -> bool:
        return self._cmp(a, b) > 0

    def _cmp(self, a, b) -> int:
        da, db = sum(e for _, e in a), sum(e for _, e in b)
        if da != db:
            return 1 if da > db else -1
        ea = {self.rank[v]: e for v, e in a}
        eb = {self.rank[v]: e for v, e in b}
        for r in sorted(set(ea) | set(eb)):
            x, y = ea.get(r, 0), eb.get(r, 0)
            if x != y:
                return 1 if x < y else -1
        return 0

    def lead(self, poly: dict) -> tuple:
        best = None
        for m in poly:
            if best is None or self._cmp(m, best) > 0:
                best = m
        return best


@dataclass(frozen=True)
class Binomial:
    lead: tuple
    trail: tuple

    def as_poly(self) -> dict:
        if self.lead == self.trail:
            return {}
        return {self.lead: 1, self.trail: -1}

    def variables(self) -> set:
        return {v for v, _ in self.lead} | {v for v, _ in self.trail}


# ------------------------------------------------------------- binomial system

@dataclass(frozen=True)
class BinomialSystem:
    """Variables with their monomial images, a term order and a candidate basis."""

    kind: str  # "hibi" | "tord" | "tchain"
    dP: DoublePoset
    variables: tuple
    basis: tuple

    @cached_property
    def order(self) -> MonomialOrder:
        return MonomialOrder({v: i for i, v in enumerate(self.variables)})

    @cached_property
    def reducers(self) -> dict:
        """Basis positions grouped by the variables of their leads."""
        out = {}
        for k, b in enumerate(self.basis):
            for v, _ in b.lead:
                out.setdefault(v, []).append(k)
        return out

    def reducer(self, m: tuple):
        """First basis element (in basis order) whose lead divides m, or None."""
        em = dict(m)
        best = None
        for v, _ in m:
            for k in self.reducers.get(v, ()):
                if best is not None and k >= best:
                    break
                if all(em.get(w, 0) >= e for w, e in self.basis[k].lead):
                    best = k
                    break
        return None if best is None else self.basis[best]

    @cached_property
    def _known(self) -> frozenset:
        return frozenset(self.variables)

    def image(self, m: tuple) -> tuple:
        """Exponent vector of the image monomial over ground elements, t+ and t-."""
        n = self.dP.n
        out = [0] * (n + 2)
        for (s, mask), e in m:
            if (s, mask) not in self._known:
                raise UnknownFilterVariable(f"no variable for {(s, self.dP.side(s).labels(mask))}")
            for i in bits(mask):
                out[i] += s * e
            out[n if s > 0 else n + 1] += e
        return tuple(out)

    def contains(self, b: Binomial) -> bool:
        return self.image(b.lead) == self.image(b.trail)

    def leads_are_correct(self) -> bool:
        return all(self.order.greater(b.lead, b.trail) for b in self.basis)

    def describe(self, b: Binomial) -> dict:
        def mono(m):
            return [[("+" if s > 0 else "-"), list(self.dP.side(s).labels(mask)), e] for (s, mask), e in m]

        return {"lead": mono(b.lead), "trail": mono(b.trail)}


def _variable_order(dP: DoublePoset, kind: str, signs) -> tuple:
    out = []
    for s in signs:
        P = dP.side(s)
        masks = filters(P) if kind != "tchain" else antichains(P)
        key = (lambda m: subset_key(m)) if kind != "tchain" else (lambda m, P=P: (subset_key(filter_generated(P, m)), subset_key(m)))
        out += [(s, m) for m in sorted(masks, key=key)]
    return tuple(out)


def _hibi_relations(P: Poset, s: int) -> list[Binomial]:
    F = filters(P)
    out = []
    for a, b in combinations(F, 2):
        if a & b not in (a, b):
            out.append(Binomial(monomial((s, a), (s, b)), monomial((s, a & b), (s, a | b))))
    return out


def _system(kind, dP, signs, basis) -> BinomialSystem:
    # leads are kept as written; leads_are_correct checks them against the order
    basis = sorted(basis, key=lambda b: (b.lead, b.trail))
    return BinomialSystem(kind, dP, _variable_order(dP, kind, signs), tuple(basis))


def hibi_basis(P: Poset) -> BinomialSystem:
    return _system("hibi", induced_double(P), (1,), _hibi_relations(P, 1))


def twist_relations(dP: DoublePoset) -> list[Binomial]:
    out = []
    for Fp in filters(dP.plus):
        mp = min_of(dP.plus, Fp)
        for Fm in filters(dP.minus):
            A = mp & min_of(dP.minus, Fm)
            if A:
                out.append(Binomial(monomial((1, Fp), (-1, Fm)), monomial((1, Fp & ~A), (-1, Fm & ~A))))
    return out


def double_hibi_basis(dP: DoublePoset) -> BinomialSystem:
    if not is_compatible(dP):
        raise NotCompatible("the double Hibi basis is stated for compatible double posets")
    basis = _hibi_relations(dP.plus, 1) + _hibi_relations(dP.minus, -1) + twist_relations(dP)
    return _system("tord", dP, (1, -1), basis)


def antichain_join(P: Poset, A: int, B: int) -> int:
    return min_of(P, A | B)


def antichain_meet(P: Poset, A: int, B: int) -> int:
    U = A | B
    return (A & B) | (max_of(P, U) & ~min_of(P, U))


def tchain_basis(dP: DoublePoset) -> BinomialSystem:
    basis = []
    for s in (1, -1):
        P = dP.side(s)
        for A, B in combinations(antichains(P), 2):
            FA, FB = filter_generated(P, A), filter_generated(P, B)
            if FA & FB not in (FA, FB):
                basis.append(Binomial(monomial((s, A), (s, B)), monomial((s, antichain_join(P, A, B)), (s, antichain_meet(P, A, B)))))
    for Ap in antichains(dP.plus):
        for Am in antichains(dP.minus):
            if Ap & Am:
                basis.append(Binomial(monomial((1, Ap), (-1, Am)), monomial((1, Ap & ~Am), (-1, Am & ~Ap))))
    return _system("tchain", dP, (1, -1), basis)


# ------------------------------------------------------------------ reduction

def _reduce(poly: dict, system: BinomialSystem, cap: int) -> dict:
    order = system.order
    poly = {m: c for m, c in poly.items() if c}
    out = {}
    steps = 0
    while poly:
        m = order.lead(poly)
        c = poly.pop(m)
        b = system.reducer(m)
        if b is None:
            out[m] = out.get(m, 0) + c
        else:
            # m = u * lead  ->  replace by u * trail
            t = _mul(_quotient(m, b.lead), b.trail)
            poly[t] = poly.get(t, 0) + c
            if not poly[t]:
                del poly[t]
        steps += 1
        if steps > cap:
            raise NonTerminating(f"reduction did not finish within {cap} steps")
    return {m: c for m, c in out.items() if c}


def normal_form(x, system: BinomialSystem) -> dict:
    """Fully reduced form of a monomial, binomial or polynomial dict."""
    if isinstance(x, Binomial):
        x = x.as_poly()
    elif isinstance(x, tuple):
        x = {x: 1}
    return _reduce(dict(x), system, config.budget().max_rewrites)


def s_polynomial(b1: Binomial, b2: Binomial) -> dict:
    L = _lcm(b1.lead, b2.lead)
    t1 = _mul(_quotient(L, b1.lead), b1.trail)
    t2 = _mul(_quotient(L, b2.lead), b2.trail)
    out = {}
    out[t1] = out.get(t1, 0) - 1
    out[t2] = out.get(t2, 0) + 1
    return {m: c for m, c in out.items() if c}


def _coprime(a: tuple, b: tuple) -> bool:
    va = {v for v, _ in a}
    return not any(v in va for v, _ in b)


@dataclass(frozen=True)
class Verification:
    is_groebner: bool
    pairs: int
    failures: tuple = ()  # index pairs whose S-polynomial does not reduce to 0


def buchberger_verify(system: BinomialSystem, stop_early: bool = True) -> Verification:
    """S-pair criterion; pairs with coprime leads are skipped (Buchberger's first criterion)."""
    cap = config.budget().max_rewrites
    if not system.leads_are_correct():
        return Verification(False, 0, ((-1, -1),))
    B = system.basis
    fails = []
    pairs = 0
    for i, j in combinations(range(len(B)), 2):
        if _coprime(B[i].lead, B[j].lead):
            continue
        pairs += 1
        if _reduce(s_polynomial(B[i], B[j]), system, cap):
            fails.append((i, j))
            if stop_early:
                break
    return Verification(not fails, pairs, tuple(fails))


def standard_monomials_injective(system: BinomialSystem, degree: int = 2) -> bool:
    """Distinct standard monomials of the given degree have distinct images.

    A repeated image exposes a toric relation whose lead the basis misses."""
    seen = {}
    for combo in combinations_with_replacement(system.variables, degree):
        m = monomial(*combo)
        if system.reducer(m) is not None:
            continue
        img = system.image(m)
        if img in seen:
            return False
        seen[img] = m
    return True


def certify(system: BinomialSystem) -> bool:
    """Membership, correct leads, S-pair reduction and degree-2 injectivity."""
    return (
        all(system.contains(b) for b in system.basis)
        and buchberger_verify(system).is_groebner
        and standard_monomials_injective(system)
    )


def is_reduced(system: BinomialSystem) -> bool:
    """No lead divides another term of the basis (observation only)."""
    B = system.basis
    for i, b in enumerate(B):
        for j, c in enumerate(B):
            if i != j and (_divides(c.lead, b.lead) or _divides(c.lead, b.trail)):
                return False
    return True


def corrupt(system: BinomialSystem, rng, mode: str = "drop") -> BinomialSystem:
    """Negative control: drop one basis element, or swap a trail variable."""
    B = list(system.basis)
    if not B:
        return system
    i = rng.randrange(len(B))
    if mode == "drop":
        B.pop(i)
    else:
        b = B[i]
        (v, _), rest = b.trail[0], b.trail[1:]
        others = [w for w in system.variables if w != v and w[0] == v[0]]
        w = others[rng.randrange(len(others))]
        B[i] = Binomial(b.lead, _mul(monomial(w), rest))
    return BinomialSystem(system.kind, system.dP, system.variables, tuple(B))


# ------------------------------------------------------ triangulation matching

def initial_complex(system: BinomialSystem) -> list[int]:
    """Maximal faces of the flag complex whose non-edges are the quadratic leads.

    Faces are bitmasks over system.variables."""
    index = {v: i for i, v in enumerate(system.variables)}
    forbidden = set()
    for b in system.basis:
        if sum(e for _, e in b.lead) != 2 or any(e != 1 for _, e in b.lead):
            raise ValueError("initial ideal is not generated by squarefree quadrics")
        u, v = (index[x] for x, _ in b.lead)
        forbidden.add((min(u, v), max(u, v)))
    G = nx.Graph()
    nv = len(system.variables)
    G.add_nodes_from(range(nv))
    G.add_edges_from((i, j) for i, j in combinations(range(nv), 2) if (i, j) not in forbidden)
    return sorted(sum(1 << i for i in K) for K in nx.find_cliques(G))


def initial_complex_match(dP: DoublePoset, which: str = "tord") -> bool:
    from .transfer import non_interfering_complex

    system = double_hibi_basis(dP) if which == "tord" else tchain_basis(dP)
    K = non_interfering_complex(dP)
    index = {v: i for i, v in enumerate(system.variables)}
    cells = []
    for c in K.cells:
        m = 0
        for i in bits(c):
            s, F = K.vertices[i]
            key = (s, F if which == "tord" else min_of(dP.side(s), F))
            m |= 1 << index[key]
        cells.append(m)
    return sorted(cells) == initial_complex(system)


def binomial_face_test(system: BinomialSystem, U) -> bool:
    """Every basis binomial vanishes at the indicator vector of the variable set U."""
    U = set(U)
    for b in system.basis:
        inside_lead = all(v in U for v, _ in b.lead)
        inside_trail = all(v in U for v, _ in b.trail)
        if inside_lead != inside_trail:
            return False
    return True


__all__ = [
    "Binomial",
    "BinomialSystem",
    "MonomialOrder",
    "Verification",
    "antichain_join",
    "antichain_meet",
    "binomial_face_test",
    "buchberger_verify",
    "certify",
    "corrupt",
    "double_hibi_basis",
    "hibi_basis",
    "initial_complex",
    "initial_complex_match",
    "is_reduced",
    "monomial",
    "normal_form",
    "s_polynomial",
    "standard_monomials_injective",
    "tchain_basis",
    "twist_relations",
]
