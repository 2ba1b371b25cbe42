"""Print the invariants of the xw double poset used throughout the tests."""
import argparse

from dposet import constructors as c
from dposet import geometry as g
from dposet import poset as ps
from dposet import registry
from dposet import transfer as tr


def report(spec: str) -> None:
    dP = registry.generate(spec)
    print(f"{spec}: {registry.describe(spec)}")
    print(f"compatible: {bool(ps.is_compatible(dP))}")
    print(f"alternating chains: {len(ps.alternating_chains(dP))}")
    for name, build in (("TOrd", c.double_order_polytope), ("TChain", c.double_chain_polytope)):
        T = build(dP)
        print(f"{name}: f = {g.face_lattice(T).fvector}, nvol = {g.normalized_volume(T)}, volume = {g.volume(T)}")
    print(f"non-interfering cells: {tr.non_interfering_complex(dP).n_cells}")
    if dP.is_induced:
        return
    for name, T in zip(("DOrd", "DChain"), c.reduced_polytopes(dP)):
        print(f"{name}: nvol = {g.normalized_volume(T)}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("spec", nargs="?", default="xw")
    report(ap.parse_args().spec)
