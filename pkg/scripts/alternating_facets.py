"""Facet counts of TOrd and TChain for the alternating chain posets, next to C(n+3, 2) + 1 and 3n + 4."""
import argparse
from math import comb

from dposet import poset as ps


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=10)
    args = ap.parse_args()
    print("n  |P|  TOrd  C(n+3,2)+1  TChain  3n+4")
    for n in range(1, args.max_n + 1):
        dP = ps.alternating_chain_poset(n)
        tord = len(ps.alternating_chains(dP))
        tchain = len(ps.chains(dP.plus)) + len(ps.chains(dP.minus))
        print(f"{n:<2} {dP.n:<4} {tord:<5} {comb(n + 3, 2) + 1:<11} {tchain:<7} {3 * n + 4}")


if __name__ == "__main__":
    main()
