"""Enumeration budgets shared by all modules."""
from contextlib import contextmanager
from dataclasses import dataclass, replace

from .errors import TooLarge


@dataclass(frozen=True)
class Budget:
    max_items: int = 2**20  # filters, chains, antichains, faces
    max_points: int = 10**7  # lattice-point candidates
    max_poset_enum: int = 10  # order polynomial
    max_graph_nodes: int = 12  # perfection test, stable sets
    max_rewrites: int = 10**5  # normal form iteration cap


_current = Budget()


def budget() -> Budget:
    return _current


@contextmanager
def use_budget(**changes):
    global _current
    old = _current
    _current = replace(old, **changes)
    try:
        yield _current
    finally:
        _current = old


def check(count, limit, what):
    if count > limit:
        raise TooLarge(f"{what}: {count} exceeds budget {limit}")
