"""Simple graphs: comparability graphs, stable sets, cliques and perfection."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import config
from .errors import UnknownLabel
from .poset import Poset, _cliques, bits


@dataclass(frozen=True)
class Graph:
    nodes: tuple
    adj: tuple  # neighbour bitmask per node

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in bits(self.adj[i]) if i < j]

    def induced(self, mask: int) -> "Graph":
        idx = bits(mask)
        pos = {v: k for k, v in enumerate(idx)}
        adj = tuple(sum(1 << pos[w] for w in bits(self.adj[v] & mask)) for v in idx)
        return Graph(tuple(self.nodes[v] for v in idx), adj)


def graph(nodes, edges=()) -> Graph:
    nodes = tuple(str(v) for v in nodes)
    index = {v: i for i, v in enumerate(nodes)}
    adj = [0] * len(nodes)
    for u, v in edges:
        u, v = str(u), str(v)
        if u not in index or v not in index:
            raise UnknownLabel(f"edge ({u}, {v}) references an unknown node")
        if u == v:
            raise UnknownLabel("loops are not allowed")
        adj[index[u]] |= 1 << index[v]
        adj[index[v]] |= 1 << index[u]
    return Graph(nodes, tuple(adj))


def from_networkx(G) -> Graph:
    nodes = list(G.nodes())
    return graph([str(v) for v in nodes], [(str(u), str(v)) for u, v in G.edges()])


def cycle_graph(n: int) -> Graph:
    return graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return graph(range(n), combinations(range(n), 2))


def comparability_graph(P: Poset) -> Graph:
    return Graph(P.elements, tuple(P.comparable(i) & ~(1 << i) for i in range(P.n)))


def complement(G: Graph) -> Graph:
    return Graph(G.nodes, tuple(G.full & ~G.adj[i] & ~(1 << i) for i in range(G.n)))


def stable_sets(G: Graph) -> list[int]:
    partners = [G.full & ~G.adj[i] & ~(1 << i) for i in range(G.n)]
    return _cliques(G.n, partners, config.budget().max_items, "stable sets")


def cliques(G: Graph) -> list[int]:
    return _cliques(G.n, list(G.adj), config.budget().max_items, "cliques")


def maximal_cliques(G: Graph) -> list[int]:
    out = []
    for C in cliques(G):
        common = G.full
        for v in bits(C):
            common &= G.adj[v]
        if not common:
            out.append(C)
    return out


def _is_cycle(G: Graph, mask: int) -> bool:
    for v in bits(mask):
        if (G.adj[v] & mask).bit_count() != 2:
            return False
    # 2-regular: connected iff a single cycle
    start = mask & -mask
    seen, frontier = start, start
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= G.adj[v] & mask
        frontier = nxt & ~seen
        seen |= frontier
    return seen == mask


def has_odd_hole(G: Graph) -> bool:
    for size in range(5, G.n + 1, 2):
        for sub in combinations(range(G.n), size):
            if _is_cycle(G, sum(1 << v for v in sub)):
                return True
    return False


def is_perfect(G: Graph) -> bool:
    """No induced odd cycle of length >= 5 in G or its complement."""
    config.check(G.n, config.budget().max_graph_nodes, "perfection test graph size")
    return not has_odd_hole(G) and not has_odd_hole(complement(G))
