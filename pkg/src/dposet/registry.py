"""Named examples (``name:param`` strings) and the JSON poset file format."""
from __future__ import annotations

import json

from . import poset as ps
from .errors import UnknownGenerator
from .graphs import Graph, graph
from .poset import DoublePoset, Poset, build_poset, induced_double


def _int(param: str, name: str) -> int:
    try:
        n = int(param)
    except ValueError:
        raise UnknownGenerator(f"{name} needs an integer parameter, got {param!r}") from None
    if n < 0:
        raise UnknownGenerator(f"{name} needs n >= 0")
    return n


def _perm(param: str, name: str) -> list[int]:
    try:
        return [int(x) for x in param.split(",") if x]
    except ValueError:
        raise UnknownGenerator(f"{name} needs a comma separated permutation") from None


GENERATORS = {
    "xw": (lambda p: ps.xw(), "five-element double poset: X on the plus side, W fence on the minus side"),
    "x": (lambda p: induced_double(ps.x_poset()), "the X poset a,b < c < d,e as an induced double poset"),
    "chain": (lambda p: induced_double(ps.chain(_int(p, "chain"))), "induced double n-chain"),
    "antichain": (lambda p: induced_double(ps.antichain(_int(p, "antichain"))), "induced double n-antichain"),
    "comb": (lambda p: induced_double(ps.comb(_int(p, "comb"))), "induced double comb with 2n elements"),
    "altchain": (lambda p: ps.alternating_chain_poset(_int(p, "altchain")), "alternating chain double poset on n+1 elements"),
    "mixed": (lambda p: ps.mixed(_int(p, "mixed")), "n-chain on the plus side, n-antichain on the minus side"),
    "opp-pair": (lambda p: ps.opposite_pair(_int(p, "opp-pair")), "n-chain with its opposite (not compatible for n >= 2)"),
    "perm": (lambda p: induced_double(ps.from_permutation(_perm(p, "perm"))), "induced double poset of a permutation"),
    "plane": (lambda p: ps.plane_from_permutation(_perm(p, "plane")), "plane double poset of a permutation"),
}

# instances exercised by the test-suite and the examples command
EXAMPLES = (
    "xw", "x", "chain:1", "chain:2", "chain:3", "antichain:2", "antichain:3", "comb:2",
    "altchain:2", "altchain:3", "mixed:2", "mixed:3", "plane:2,3,1", "opp-pair:2",
)


def generate(spec: str) -> DoublePoset:
    name, _, param = spec.partition(":")
    if name not in GENERATORS:
        raise UnknownGenerator(f"unknown generator {name!r}; known: {', '.join(sorted(GENERATORS))}")
    return GENERATORS[name][0](param)


def describe(spec: str) -> str:
    name = spec.partition(":")[0]
    if name not in GENERATORS:
        raise UnknownGenerator(f"unknown generator {name!r}")
    return GENERATORS[name][1]


# ------------------------------------------------------------------------ JSON

def _relations(P: Poset) -> list[list[str]]:
    return [[P.elements[a], P.elements[b]] for a, b in P.covers()]


def to_json(dP: DoublePoset) -> dict:
    out = {"elements": list(dP.ground), "plus": _relations(dP.plus)}
    if dP.minus != dP.plus:
        out["minus"] = _relations(dP.minus)
    return out


def from_json(data: dict) -> DoublePoset:
    elements = [str(e) for e in data["elements"]]
    plus = build_poset(elements, [tuple(r) for r in data.get("plus", [])])
    if "minus" not in data:
        return induced_double(plus)
    return DoublePoset(plus, build_poset(elements, [tuple(r) for r in data["minus"]]))


def dumps(dP: DoublePoset) -> str:
    return json.dumps(to_json(dP), sort_keys=True)


def loads(text: str) -> DoublePoset:
    return from_json(json.loads(text))


def graph_to_json(G: Graph) -> dict:
    return {"nodes": list(G.nodes), "edges": [[G.nodes[i], G.nodes[j]] for i, j in G.edges()]}


def graph_from_json(data: dict) -> Graph:
    return graph(data["nodes"], [tuple(e) for e in data.get("edges", [])])
