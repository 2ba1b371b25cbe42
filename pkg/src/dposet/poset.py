"""Finite posets and double posets.

Subsets of the ground set are int bitmasks (bit i is element i). Every
enumeration returns subsets in canonical order: by size, then lexicographic
on element indices.
"""
from __future__ import annotations

import graphlib
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product

from . import config
from .errors import CycleError, NotCompatible, SingularMatrix, UnknownGenerator, UnknownLabel
from .linalg import inverse, matmul


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def subset_key(mask: int):
    return (mask.bit_count(), bits(mask))


def canonical(masks) -> list[int]:
    return sorted(set(masks), key=subset_key)


class Poset:
    """A partial order stored as up-set and down-set bitmasks per element."""

    __slots__ = ("elements", "index", "up", "down", "_hash")

    def __init__(self, elements, up):
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.up = tuple(up)
        down = [0] * len(self.elements)
        for i, u in enumerate(self.up):
            for j in bits(u):
                down[j] |= 1 << i
        self.down = tuple(down)
        self._hash = None

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def __repr__(self):
        rel = ", ".join(f"{self.elements[i]}<{self.elements[j]}" for i, j in self.covers())
        return f"Poset([{', '.join(self.elements)}]; {rel})"

    def __eq__(self, other):
        return isinstance(other, Poset) and self.elements == other.elements and self.up == other.up

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.elements, self.up))
        return self._hash

    def leq(self, a, b) -> bool:
        return bool(self.up[self._i(a)] >> self._i(b) & 1)

    def lt(self, i: int, j: int) -> bool:
        return i != j and bool(self.up[i] >> j & 1)

    def strict_up(self, i: int) -> int:
        return self.up[i] & ~(1 << i)

    def strict_down(self, i: int) -> int:
        return self.down[i] & ~(1 << i)

    def comparable(self, i: int) -> int:
        return self.up[i] | self.down[i]

    def _i(self, a):
        if isinstance(a, int):
            return a
        try:
            return self.index[a]
        except KeyError:
            raise UnknownLabel(f"unknown element {a!r}") from None

    def mask(self, labels) -> int:
        m = 0
        for a in labels:
            m |= 1 << self._i(a)
        return m

    def labels(self, mask: int) -> tuple:
        return tuple(self.elements[i] for i in bits(mask))

    def covers(self) -> list[tuple[int, int]]:
        out = []
        for i in range(self.n):
            above = self.strict_up(i)
            for j in bits(above):
                if not any(self.lt(k, j) for k in bits(above & ~(1 << j))):
                    out.append((i, j))
        return out

    def relations(self) -> list[tuple[str, str]]:
        return [(self.elements[i], self.elements[j]) for i, j in self.covers()]

    def minimal(self) -> int:
        return min_of(self, self.full)

    def maximal(self) -> int:
        return max_of(self, self.full)

    def is_chain(self) -> bool:
        return all(self.comparable(i) == self.full for i in range(self.n))


def build_poset(labels, relations=()) -> Poset:
    labels = [str(a) for a in labels]
    if len(set(labels)) != len(labels):
        raise UnknownLabel("element labels must be distinct")
    index = {a: i for i, a in enumerate(labels)}
    n = len(labels)
    up = [1 << i for i in range(n)]
    for a, b in relations:
        a, b = str(a), str(b)
        if a not in index or b not in index:
            raise UnknownLabel(f"relation ({a}, {b}) references an unknown label")
        up[index[a]] |= 1 << index[b]
    for k in range(n):
        for i in range(n):
            if up[i] >> k & 1:
                up[i] |= up[k]
    for i in range(n):
        for j in bits(up[i] & ~(1 << i)):
            if up[j] >> i & 1:
                raise CycleError(f"{labels[i]} <= {labels[j]} <= {labels[i]}")
    return Poset(labels, up)


@dataclass(frozen=True)
class DoublePoset:
    plus: Poset
    minus: Poset

    def __post_init__(self):
        if self.plus.elements != self.minus.elements:
            raise UnknownLabel("both orders must live on the same ground set")

    @property
    def ground(self) -> tuple:
        return self.plus.elements

    @property
    def n(self) -> int:
        return self.plus.n

    def side(self, sign: int) -> Poset:
        return self.plus if sign > 0 else self.minus

    @property
    def is_induced(self) -> bool:
        return self.plus == self.minus


def induced_double(P: Poset) -> DoublePoset:
    return DoublePoset(P, P)


# ---------------------------------------------------------------- enumeration

def _cliques(n: int, partners, limit: int, what: str) -> list[int]:
    """All subsets whose elements are pairwise partners (includes the empty set)."""
    out = [0]
    stack = [(0, (1 << n) - 1)]
    while stack:
        mask, allowed = stack.pop()
        for j in bits(allowed):
            new = mask | 1 << j
            out.append(new)
            config.check(len(out), limit, what)
            rest = allowed & partners[j] & ~((1 << (j + 1)) - 1)
            if rest:
                stack.append((new, rest))
    return canonical(out)


def antichains(P: Poset) -> list[int]:
    partners = [P.full & ~P.comparable(i) for i in range(P.n)]
    return _cliques(P.n, partners, config.budget().max_items, "antichains")


def chains(P: Poset, nonempty: bool = False) -> list[int]:
    partners = [P.comparable(i) & ~(1 << i) for i in range(P.n)]
    out = _cliques(P.n, partners, config.budget().max_items, "chains")
    return out[1:] if nonempty else out


def maximal_chains(P: Poset) -> list[int]:
    cover_up = [0] * P.n
    for i, j in P.covers():
        cover_up[i] |= 1 << j
    out = []
    stack = [(i, 1 << i) for i in bits(P.minimal())]
    while stack:
        i, mask = stack.pop()
        if not cover_up[i]:
            out.append(mask)
            config.check(len(out), config.budget().max_items, "maximal chains")
        for j in bits(cover_up[i]):
            stack.append((j, mask | 1 << j))
    return canonical(out)


def min_of(P: Poset, S: int) -> int:
    return sum(1 << s for s in bits(S) if P.down[s] & S == 1 << s)


def max_of(P: Poset, S: int) -> int:
    return sum(1 << s for s in bits(S) if P.up[s] & S == 1 << s)


def filter_generated(P: Poset, S: int) -> int:
    out = 0
    for s in bits(S):
        out |= P.up[s]
    return out


def is_filter(P: Poset, S: int) -> bool:
    return filter_generated(P, S) == S


def filters(P: Poset) -> list[int]:
    # filters are in bijection with their antichains of minimal elements
    return canonical(filter_generated(P, A) for A in antichains(P))


def linear_extension_count(P: Poset) -> int:
    @lru_cache(maxsize=None)
    def count(placed: int) -> int:
        if placed == P.full:
            return 1
        total = 0
        for a in bits(P.full & ~placed):
            if P.strict_down(a) & ~placed == 0:
                total += count(placed | 1 << a)
        return total

    return count(0)


def linear_extension_count_naive(P: Poset) -> int:
    return sum(
        all(not P.lt(p[j], p[i]) for i in range(len(p)) for j in range(i + 1, len(p)))
        for p in permutations(range(P.n))
    )


def linear_extension(P: Poset) -> list[int]:
    ts = graphlib.TopologicalSorter({i: bits(P.strict_down(i)) for i in range(P.n)})
    return list(ts.static_order())


# -------------------------------------------------------------- compatibility

@dataclass(frozen=True)
class Compatibility:
    compatible: bool
    extension: tuple | None = None  # common linear extension (labels)
    cycle: tuple | None = None  # alternating cycle as ((label, sign), ...)

    def __bool__(self):
        return self.compatible


def is_compatible(dP: DoublePoset) -> Compatibility:
    """Decide whether both orders admit a common linear extension.

    On failure the witness is an alternating cycle: a list of (element, sign)
    where the element is related to the next one by the strict order of that sign.
    """
    n = dP.n
    graph = {i: bits(dP.plus.strict_down(i) | dP.minus.strict_down(i)) for i in range(n)}
    try:
        order = list(graphlib.TopologicalSorter(graph).static_order())
    except graphlib.CycleError as exc:
        # graphlib reports the cycle in predecessor order; reverse it to go upward
        cyc = list(reversed(exc.args[1][:-1]))
        return Compatibility(False, cycle=_alternate(dP, cyc))
    return Compatibility(True, extension=tuple(dP.ground[i] for i in order))


def _alternate(dP: DoublePoset, cyc: list[int]) -> tuple:
    steps = []
    for k, a in enumerate(cyc):
        b = cyc[(k + 1) % len(cyc)]
        steps.append((a, 1 if dP.plus.lt(a, b) else -1))
    # merge runs of equal sign using transitivity
    changed = True
    while changed and len(steps) > 1:
        changed = False
        for k in range(len(steps)):
            nxt = (k + 1) % len(steps)
            if steps[k][1] == steps[nxt][1]:
                del steps[nxt]
                changed = True
                break
    return tuple((dP.ground[a], s) for a, s in steps)


# ---------------------------------------------------------- alternating chains

@dataclass(frozen=True)
class AlternatingChain:
    elements: tuple[int, ...]  # p_1 .. p_{k-1} as indices
    start: int  # sign of the relation 0^ -> p_1 (or 0^ -> 1^)

    @property
    def k(self) -> int:
        return len(self.elements) + 1

    @property
    def proper(self) -> bool:
        return self.k > 1

    @property
    def sign(self) -> int:
        """Sign of the last relation p_{k-1} -> 1^."""
        return self.start * (-1) ** (self.k - 1)

    def coefficients(self, n: int) -> list[int]:
        """Coefficients of the linear functional attached to the chain."""
        c = [0] * n
        for i, p in enumerate(self.elements, start=1):
            c[p] += self.start * (-1) ** i
        return c

    def signs(self) -> tuple[int, ...]:
        return tuple(self.start * (-1) ** i for i in range(self.k))

    def describe(self, dP: DoublePoset) -> str:
        parts = ["0"]
        for s, p in zip(self.signs(), self.elements + (None,)):
            parts.append("<+" if s > 0 else "<-")
            parts.append("1" if p is None else dP.ground[p])
        return " ".join(parts)


def alternating_chains(dP: DoublePoset) -> list[AlternatingChain]:
    out = []
    limit = config.budget().max_items
    for start in (1, -1):
        stack = [()]
        while stack:
            seq = stack.pop()
            out.append(AlternatingChain(seq, start))
            config.check(len(out), limit, "alternating chains")
            if not seq:
                nxt = range(dP.n)
            else:
                sign = start * (-1) ** len(seq)
                nxt = bits(dP.side(sign).strict_up(seq[-1]))
            for p in nxt:
                if p not in seq:
                    stack.append(seq + (p,))
    out.sort(key=lambda c: (-c.start, len(c.elements), c.elements))
    return out


def facet_count_transfer_matrix(dP: DoublePoset) -> int:
    """Count alternating chains as alternating 0^ -> 1^ paths via matrix inverses.

    Strict order matrices are taken on P with a bottom 0^ (index n) and a top 1^
    (index n + 1) adjoined to both orders."""
    if not is_compatible(dP):
        raise NotCompatible("transfer-matrix count needs a compatible double poset")
    n = dP.n
    N = n + 2
    eta = {}
    for s in (1, -1):
        P = dP.side(s)
        M = [[0] * N for _ in range(N)]
        for i in range(n):
            for j in bits(P.strict_up(i)):
                M[i][j] = 1
            M[n][i] = M[i][n + 1] = 1
        M[n][n + 1] = 1
        eta[s] = M
    eye = [[int(i == j) for j in range(N)] for i in range(N)]
    total = 0
    for s in (1, -1):
        prod = matmul(eta[s], eta[-s])
        inv = inverse([[eye[i][j] - prod[i][j] for j in range(N)] for i in range(N)])
        if inv is None:
            raise SingularMatrix("I - eta eta' is singular; the orders form an alternating cycle")
        step = [[eye[i][j] + eta[s][i][j] for j in range(N)] for i in range(N)]
        total += matmul(inv, step)[n][n + 1]
    return total


# ------------------------------------------------------------------ generators

def chain(n: int) -> Poset:
    labels = [str(i) for i in range(1, n + 1)]
    return build_poset(labels, zip(labels, labels[1:]))


def antichain(n: int) -> Poset:
    return build_poset([str(i) for i in range(1, n + 1)])


def comb(n: int) -> Poset:
    a = [f"a{i}" for i in range(1, n + 1)]
    b = [f"b{i}" for i in range(1, n + 1)]
    return build_poset(a + b, list(zip(a, a[1:])) + list(zip(b, a)))


def from_permutation(pi) -> Poset:
    n = len(pi)
    if len(set(pi)) != n:
        raise UnknownGenerator("permutation entries must be distinct")
    labels = [str(i) for i in range(1, n + 1)]
    rel = [(labels[i], labels[j]) for i in range(n) for j in range(i + 1, n) if pi[i] < pi[j]]
    return build_poset(labels, rel)


def plane_from_permutation(pi) -> DoublePoset:
    return DoublePoset(from_permutation(pi), from_permutation([-x for x in pi]))


def x_poset() -> Poset:
    return build_poset("abcde", [("a", "c"), ("b", "c"), ("c", "d"), ("c", "e")])


def alternating_chain_poset(n: int) -> DoublePoset:
    labels = [f"a{i}" for i in range(1, n + 2)]
    plus = [(labels[i], labels[i + 1]) for i in range(0, n, 2)]
    minus = [(labels[i], labels[i + 1]) for i in range(1, n, 2)]
    return DoublePoset(build_poset(labels, plus), build_poset(labels, minus))


def xw() -> DoublePoset:
    """Five-element double poset: an 'X' shape on one side, a 'W' fence on the other."""
    plus = build_poset("abcde", [("a", "c"), ("b", "c"), ("c", "d"), ("c", "e")])
    minus = build_poset("abcde", XW_MINUS)
    return DoublePoset(plus, minus)


# W fence d > a < c > b < e; the edges a<c and b<c are shared with the X
XW_MINUS = [("a", "c"), ("a", "d"), ("b", "c"), ("b", "e")]


def mixed(n: int) -> DoublePoset:
    """Chain on the plus side, antichain on the minus side."""
    return DoublePoset(chain(n), antichain(n))


def opposite_pair(n: int) -> DoublePoset:
    """The chain [n] together with its opposite order."""
    P = chain(n)
    return DoublePoset(P, opposite(P))


# ---------------------------------------------------------------- combinators

def opposite(P: Poset) -> Poset:
    return Poset(P.elements, P.down)


def _fresh(labels, taken):
    out = []
    for a in labels:
        b, k = a, 1
        while b in taken:
            k += 1
            b = f"{a}_{k}"
        taken.add(b)
        out.append(b)
    return out


def _glue(P: Poset, Q: Poset, ordinal: bool) -> Poset:
    taken = set(P.elements)
    q_labels = _fresh(Q.elements, taken)
    n = P.n
    up = [u | (((1 << Q.n) - 1) << n if ordinal else 0) for u in P.up]
    up += [u << n for u in Q.up]
    return Poset(list(P.elements) + q_labels, up)


def disjoint_union(P: Poset, Q: Poset) -> Poset:
    return _glue(P, Q, ordinal=False)


def ordinal_sum(P: Poset, Q: Poset) -> Poset:
    return _glue(P, Q, ordinal=True)


def composition(D1: DoublePoset, D2: DoublePoset) -> DoublePoset:
    return DoublePoset(disjoint_union(D1.plus, D2.plus), ordinal_sum(D1.minus, D2.minus))


def relabel(P: Poset, labels) -> Poset:
    return Poset(labels, P.up)


def order_polynomial(P: Poset, strict: bool = False):
    """Order polynomial (or strict order polynomial) as a sympy Poly in ``n``.

    Values at k = 1..|P|+1 are counted exactly as multichains of down-sets
    (strict: consecutive differences are antichains), then interpolated.
    """
    import sympy

    config.check(P.n, config.budget().max_poset_enum, "order polynomial poset size")
    n = sympy.Symbol("n")
    points = [(k, count_order_maps(P, k, strict)) for k in range(1, P.n + 2)]
    return sympy.Poly(sympy.interpolate(points, n), n, domain="QQ")


def count_order_maps(P: Poset, k: int, strict: bool = False) -> int:
    """Number of (strictly) order-preserving maps P -> [k]."""
    if P.n == 0:
        return 1
    if k <= 0:
        return 0
    downsets = canonical(P.full & ~F for F in filters(P))
    ac = set(antichains(P)) if strict else None
    # level-by-level: current down-set D is everything mapped to values <= level
    ways = {0: 1}
    for _ in range(k):
        nxt = {}
        for D, w in ways.items():
            for E in downsets:
                if E & D == D and (not strict or (E & ~D) in ac):
                    nxt[E] = nxt.get(E, 0) + w
        ways = nxt
    return ways.get(P.full, 0)


def count_order_maps_naive(P: Poset, k: int, strict: bool = False) -> int:
    rel = [(i, j) for i in range(P.n) for j in range(P.n) if P.lt(i, j)]
    if strict:
        return sum(all(f[i] < f[j] for i, j in rel) for f in product(range(k), repeat=P.n))
    return sum(all(f[i] <= f[j] for i, j in rel) for f in product(range(k), repeat=P.n))


# --------------------------------------------------------------- enumeration

def naturally_labeled_posets(n: int) -> list[Poset]:
    """Every poset on n elements up to isomorphism (with repeats): relations only i < j."""
    config.check(n, 6, "exhaustive poset enumeration size")
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    labels = [str(i) for i in range(1, n + 1)]
    out, seen = [], set()
    for sub in range(1 << len(pairs)):
        up = [1 << i for i in range(n)]
        for k, (i, j) in enumerate(pairs):
            if sub >> k & 1:
                up[i] |= 1 << j
        # transitively closed: the up-set of i contains the up-sets of its members
        if all(up[j] & ~up[i] == 0 for i in range(n) for j in bits(up[i])):
            key = tuple(up)
            if key not in seen:
                seen.add(key)
                out.append(Poset(labels, up))
    return out


def _permute(P: Poset, perm) -> tuple:
    up = [0] * P.n
    for i in range(P.n):
        up[perm[i]] = sum(1 << perm[j] for j in bits(P.up[i]))
    return tuple(up)


def labeled_posets(n: int) -> list[Poset]:
    labels = [str(i) for i in range(1, n + 1)]
    seen = {}
    for P in naturally_labeled_posets(n):
        for perm in permutations(range(n)):
            key = _permute(P, perm)
            seen.setdefault(key, None)
    return [Poset(labels, up) for up in sorted(seen)]


def double_posets(n: int) -> list[DoublePoset]:
    """All double posets on n elements up to simultaneous relabeling."""
    labels = [str(i) for i in range(1, n + 1)]
    perms = list(permutations(range(n)))
    classes = {min(_permute(P, p) for p in perms) for P in naturally_labeled_posets(n)}
    L = labeled_posets(n)
    seen, out = set(), []
    for up in sorted(classes):
        P = Poset(labels, up)
        for Q in L:
            key = min((_permute(P, p), _permute(Q, p)) for p in perms)
            if key not in seen:
                seen.add(key)
                out.append(DoublePoset(Poset(labels, key[0]), Poset(labels, key[1])))
    return out


def random_poset(rng, n: int, density: float = 0.4) -> Poset:
    """Random relations i < j kept with the given probability, then closed and shuffled."""
    labels = [str(i) for i in range(1, n + 1)]
    perm = list(range(n))
    rng.shuffle(perm)
    rel = [(labels[perm[i]], labels[perm[j]]) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    return build_poset(labels, rel)


def random_double_poset(rng, n: int, density: float = 0.4, compatible: bool | None = None) -> DoublePoset:
    while True:
        dP = DoublePoset(random_poset(rng, n, density), random_poset(rng, n, density))
        if compatible is None or bool(is_compatible(dP)) == compatible:
            return dP
