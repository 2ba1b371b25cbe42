"""Exploratory comparison of f-vectors of TOrd and TChain, written as CSV.

The output is evidence, never a certificate."""
import argparse
import csv
import sys
import time

from dposet.cli import conjecture_scan


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=4)
    ap.add_argument("--altchain", type=int, default=6)
    ap.add_argument("--out", default="-")
    args = ap.parse_args()
    t0 = time.perf_counter()
    rows = conjecture_scan(args.max_n, args.altchain)
    f = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(f)
    w.writerow(["double_poset", "scope", "f_tord", "f_tchain", "dominated"])
    for name, scope, fo, fc, ok in rows:
        w.writerow([name, scope, " ".join(map(str, fo)), " ".join(map(str, fc)), ok])
    if f is not sys.stdout:
        f.close()
    for scope in ("induced", "extension"):
        tried = [r for r in rows if r[1] == scope]
        bad = sum(not r[4] for r in tried)
        print(f"{scope}: {bad} of {len(tried)} fail", file=sys.stderr)
    print(f"{time.perf_counter() - t0:.1f}s", file=sys.stderr)


if __name__ == "__main__":
    main()
