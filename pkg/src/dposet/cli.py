"""Command-line front end: ``dposet <command> --gen NAME[:PARAM] | --file PATH``.

Exit codes: 0 success, 1 usage error, 2 domain error (the message starts with
the error class name).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from fractions import Fraction

from . import antiblocking as ab
from . import config
from . import constructors as c
from . import geometry as g
from . import hibi
from . import poset as ps
from . import registry
from . import transfer as tr
from .errors import DPosetError
from .graphs import comparability_graph, is_perfect

POLYTOPES = ("order", "chain", "tord", "tchain", "dord", "dchain", "hansen", "valuation", "gamma", "twisted-prism")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -------------------------------------------------------------------- output

def _num(x, fmt):
    if isinstance(x, Fraction) and x.denominator != 1:
        return f"{x.numerator}/{x.denominator}" if fmt == "table" else [x.numerator, x.denominator]
    if isinstance(x, Fraction):
        return x.numerator
    return x


def _clean(obj, fmt):
    if isinstance(obj, dict):
        return {k: _clean(v, fmt) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v, fmt) for v in obj]
    return _num(obj, fmt)


def _cell(x) -> str:
    if isinstance(x, list):
        return "(" + ",".join(_cell(v) for v in x) + ")"
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


def emit(out, data, fmt: str, header=None) -> None:
    """Print a scalar, a flat list, or a table (list of rows with a header)."""
    scalar = not isinstance(data, (list, tuple, dict))
    data = _clean(data, fmt)
    if fmt == "json":
        payload = data
        if header is not None:
            payload = [dict(zip(header, row)) for row in data]
        out.write(json.dumps(payload, sort_keys=True) + "\n")
        return
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header is not None:
            w.writerow(header)
            for row in data:
                w.writerow([json.dumps(v) if isinstance(v, list) else _cell(v) for v in row])
        elif scalar:
            w.writerow([json.dumps(data) if isinstance(data, list) else _cell(data)])
        else:
            w.writerow([json.dumps(v) if isinstance(v, list) else _cell(v) for v in data])
        out.write(buf.getvalue())
        return
    if header is not None:
        rows = [[_cell(v) for v in row] for row in data]
        widths = [max([len(h)] + [len(r[i]) for r in rows]) for i, h in enumerate(header)]
        out.write("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip() + "\n")
        for r in rows:
            out.write("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() + "\n")
    elif isinstance(data, list):
        out.write(",".join(_cell(v) for v in data) + "\n")
    else:
        out.write(_cell(data) + "\n")


# --------------------------------------------------------------------- input

def load_input(args) -> ps.DoublePoset:
    if args.gen is not None:
        return registry.generate(args.gen)
    if args.file is not None:
        with open(args.file, encoding="utf-8") as fh:
            return registry.loads(fh.read())
    raise UsageError("one of --gen or --file is required")


def build_polytope(dP: ps.DoublePoset, which: str) -> g.QPolytope:
    P = dP.plus
    if which == "order":
        return c.order_polytope(P)
    if which == "chain":
        return c.chain_polytope(P)
    if which == "tord":
        return c.double_order_polytope(dP)
    if which == "tchain":
        return c.double_chain_polytope(dP)
    if which == "dord":
        return c.reduced_order_polytope(dP)
    if which == "dchain":
        return c.reduced_chain_polytope(dP)
    if which == "hansen":
        return c.hansen(comparability_graph(P))
    if which == "valuation":
        return c.valuation_polytope(P)
    if which == "gamma":
        return c.gamma_order(P)
    if which == "twisted-prism":
        T = c.twisted_prism(c.negate(c.valuation_polytope(P)))
        # its facets are read off the vertices of the polar TOrd of the induced double poset
        facets = tuple((v, 1) for v in c.double_order_polytope(ps.induced_double(P)).vertices)
        T = T.with_(inequalities=facets)
        g.validate(T)
        return T
    raise UsageError(f"unknown polytope {which!r}")


def _add_input(p):
    src = p.add_mutually_exclusive_group()
    src.add_argument("--gen", help="registry generator, e.g. xw or comb:3")
    src.add_argument("--file", help="JSON double poset file")


def _add_polytope(p, default="tord"):
    p.add_argument("--polytope", choices=POLYTOPES, default=default)


def _budget(text: str) -> dict:
    out = {}
    if not text:
        return out
    fields = set(config.Budget.__dataclass_fields__)
    for part in text.split(","):
        key, _, value = part.partition("=")
        key = key.strip()
        if key not in fields or not value:
            raise UsageError(f"bad budget entry {part!r}; keys: {', '.join(sorted(fields))}")
        try:
            out[key] = int(value)
        except ValueError:
            raise UsageError(f"budget value for {key} must be an integer") from None
    return out


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dposet", description="Exact polytopes of posets and double posets.")
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", default="", help="comma separated key=value caps, e.g. max_points=100000")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("check", help="compatible | 2level | reflexive | perfect")
    s.add_argument("property", choices=("compatible", "2level", "reflexive", "perfect"))
    _add_input(s)
    _add_polytope(s)

    for name in ("vertices", "facets", "fvector"):
        s = sub.add_parser(name)
        _add_input(s)
        _add_polytope(s)

    s = sub.add_parser("volume")
    _add_input(s)
    _add_polytope(s)
    s.add_argument("--normalized", action="store_true", help="normalized volume in lattice coordinates")

    s = sub.add_parser("ehrhart")
    _add_input(s)
    _add_polytope(s)
    s.add_argument("--max-dilate", type=int, default=None, help="also list lattice-point counts for k = 0..K")

    s = sub.add_parser("triangulate")
    _add_input(s)
    s.add_argument("--polytope", choices=("tord", "tchain"), default="tchain")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--count", action="store_true")
    mode.add_argument("--list", action="store_true")

    s = sub.add_parser("transfer")
    _add_input(s)
    s.add_argument("--map", choices=("phi", "phi-inv", "psi", "psi-inv"), required=True)
    s.add_argument("--point", required=True, help='JSON list of numbers or "p/q" strings')

    s = sub.add_parser("groebner")
    _add_input(s)
    s.add_argument("--ideal", choices=("tord", "tchain", "hibi"), default="tord")
    s.add_argument("--verify", action="store_true")
    s.add_argument("--list", action="store_true")

    s = sub.add_parser("antiblock")
    s.add_argument("action", choices=("assoc", "diff", "cayley", "subdivide", "count"))
    _add_input(s)
    s.add_argument("--ab-file", help="JSON {generators: [...]} for the first polytope (default C(P+))")
    s.add_argument("--ab-file2", help="JSON {generators: [...]} for the second polytope (default C(P-))")
    s.add_argument("--a", type=int, default=1)
    s.add_argument("--b", type=int, default=1)

    s = sub.add_parser("examples")
    s.add_argument("--name", default=None)

    s = sub.add_parser("conjecture-scan", help="exploratory f-vector comparison of TOrd and TChain")
    s.add_argument("--max-n", type=int, default=3, help="all compatible double posets up to this size")
    s.add_argument("--altchain", type=int, default=6, help="alternating chain posets A_1..A_N")
    return p


# ------------------------------------------------------------------ commands

def cmd_check(args, dP, out):
    if args.property == "compatible":
        comp = ps.is_compatible(dP)
        if args.format == "table":
            emit(out, comp.compatible, "table")
            if comp.compatible:
                out.write("extension: " + " < ".join(comp.extension) + "\n")
            else:
                out.write("cycle: " + " ".join(f"{a} <{'+' if s > 0 else '-'}" for a, s in comp.cycle) + f" {comp.cycle[0][0]}\n")
        else:
            witness = list(comp.extension) if comp.compatible else [[a, s] for a, s in comp.cycle]
            emit(out, [[comp.compatible, witness]], args.format, ["compatible", "witness"])
        return
    if args.property == "perfect":
        emit(out, [["plus", is_perfect(comparability_graph(dP.plus))], ["minus", is_perfect(comparability_graph(dP.minus))]], args.format, ["side", "perfect"])
        return
    P = build_polytope(dP, args.polytope)
    if args.property == "2level":
        emit(out, g.is_2level(P), args.format)
    else:
        emit(out, g.is_reflexive(P), args.format)


def cmd_vertices(args, dP, out):
    P = build_polytope(dP, args.polytope)
    P.require(v=True)
    tags = P.vertex_tags or [""] * len(P.vertices)
    emit(out, [[list(v), _tag(t)] for v, t in zip(P.vertices, tags)], args.format, ["vertex", "tag"])


def _tag(t):
    if isinstance(t, ps.AlternatingChain):
        return "alt " + ("+" if t.start > 0 else "-") + ":" + "".join(str(i) for i in t.elements)
    if t is None or t == "":
        return ""
    return " ".join(str(x) if not isinstance(x, tuple) else "{" + ",".join(map(str, x)) + "}" for x in t)


def cmd_facets(args, dP, out):
    P = build_polytope(dP, args.polytope)
    P.require(h=True)
    tags = P.facet_tags or [""] * len(P.inequalities)
    rows = []
    for (a, b), t in zip(P.inequalities, tags):
        if isinstance(t, ps.AlternatingChain):
            t = t.describe(dP)
        rows.append([list(a), b, _tag(t) if not isinstance(t, str) else t])
    emit(out, rows, args.format, ["normal", "rhs", "tag"])


def cmd_fvector(args, dP, out):
    P = build_polytope(dP, args.polytope)
    emit(out, list(g.face_lattice(P).fvector), args.format)


def cmd_volume(args, dP, out):
    P = build_polytope(dP, args.polytope)
    emit(out, g.normalized_volume(P) if args.normalized else g.volume(P), args.format)


def cmd_ehrhart(args, dP, out):
    P = build_polytope(dP, args.polytope)
    E = g.ehrhart(P)
    emit(out, [[i, a] for i, a in enumerate(E.coefficients)], args.format, ["degree", "coefficient"])
    if args.max_dilate is not None:
        rows = [[k, g.count_lattice_points(P, k) if k else 1, E(k)] for k in range(args.max_dilate + 1)]
        emit(out, rows, args.format, ["k", "points", "polynomial"])


def cmd_triangulate(args, dP, out):
    cells = tr.triangulate(dP, args.polytope)
    if args.list:
        emit(out, [[i, [list(v) for v in S]] for i, S in enumerate(cells)], args.format, ["cell", "vertices"])
    else:
        emit(out, len(cells), args.format)


def _point(text: str, n: int) -> tuple:
    try:
        raw = json.loads(text)
        pt = tuple(Fraction(x) if isinstance(x, str) else Fraction(x) for x in raw)
    except (ValueError, TypeError):
        raise UsageError(f"--point must be a JSON list of numbers, got {text!r}") from None
    if len(pt) != n:
        raise UsageError(f"--point needs {n} coordinates")
    return pt


def cmd_transfer(args, dP, out):
    x = _point(args.point, dP.n)
    fn = {
        "phi": lambda: tr.transfer(dP.plus, x),
        "phi-inv": lambda: tr.inverse_transfer(dP.plus, x),
        "psi": lambda: tr.psi(dP, x),
        "psi-inv": lambda: tr.psi_inverse(dP, x),
    }[args.map]
    emit(out, list(fn()), args.format)


def cmd_groebner(args, dP, out):
    if args.ideal == "hibi":
        S = hibi.hibi_basis(dP.plus)
    elif args.ideal == "tord":
        S = hibi.double_hibi_basis(dP)
    else:
        S = hibi.tchain_basis(dP)
    if args.list:
        rows = []
        for b in S.basis:
            d = S.describe(b)
            rows.append([_mono(d["lead"]), _mono(d["trail"])])
        emit(out, rows, args.format, ["lead", "trail"])
    summary = [["binomials", len(S.basis)], ["members", all(S.contains(b) for b in S.basis)]]
    if args.verify:
        v = hibi.buchberger_verify(S)
        summary += [["s_pairs", v.pairs], ["groebner", v.is_groebner], ["reduced", hibi.is_reduced(S)]]
    emit(out, summary, args.format, ["item", "value"])


def _mono(m):
    return " ".join(f"x{s}{{{','.join(lab)}}}" + (f"^{e}" if e > 1 else "") for s, lab, e in m)


def _ab_input(path, default):
    if path is None:
        return default
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return ab.from_vrep([tuple(Fraction(x) if isinstance(x, str) else x for x in v) for v in data["generators"]])


def cmd_antiblock(args, dP, out):
    P1 = _ab_input(args.ab_file, c.chain_antiblocking(dP.plus))
    P2 = _ab_input(args.ab_file2, c.chain_antiblocking(dP.minus))
    if args.action == "assoc":
        A = ab.associated(P1)
        emit(out, [["generator", list(v)] for v in A.generators] + [["normal", list(v)] for v in A.normals], args.format, ["kind", "vector"])
    elif args.action == "diff":
        D = ab.difference(P1, P2, args.a, args.b)
        emit(out, [["vertex", list(v)] for v in D.vertices] + [["facet", list(a) + [b]] for a, b in D.inequalities], args.format, ["kind", "vector"])
    elif args.action == "cayley":
        K = ab.cayley(P1, P2, scale=2)
        emit(out, [["vertex", list(v)] for v in K.vertices] + [["facet", list(a) + [b]] for a, b in K.inequalities], args.format, ["kind", "vector"])
    elif args.action == "subdivide":
        rows = [[list(cell.J), len(cell.polytope.vertices), g.volume(cell.polytope)] for cell in ab.canonical_subdivision(P1, P2)]
        emit(out, rows, args.format, ["J", "vertices", "volume"])
    else:
        emit(out, [["cells", ab.lattice_count_diff(P1, P2, args.a, args.b)], ["direct", ab.lattice_count_diff_direct(P1, P2, args.a, args.b)]], args.format, ["method", "count"])


def cmd_examples(args, out):
    if args.name is None:
        emit(out, [[name, registry.describe(name)] for name in sorted(registry.GENERATORS)], args.format, ["generator", "description"])
        return
    dP = registry.generate(args.name)
    comp = ps.is_compatible(dP)
    rows = [
        ["elements", len(dP.ground)],
        ["compatible", comp.compatible],
        ["filters+", len(ps.filters(dP.plus))],
        ["filters-", len(ps.filters(dP.minus))],
        ["alternating_chains", len(ps.alternating_chains(dP)) if comp else "n/a"],
        ["json", registry.dumps(dP)],
    ]
    emit(out, rows, args.format, ["item", "value"])


def conjecture_scan(max_n: int, altchain: int) -> list[list]:
    """Rows (name, scope, f(TOrd), f(TChain), dominated?) for compatible double posets.

    scope is "induced" for the posets the conjecture is about and "extension"
    for general compatible double posets."""
    cases = [(f"altchain:{n}", ps.alternating_chain_poset(n)) for n in range(1, altchain + 1)]
    for n in range(1, max_n + 1):
        cases += [(f"n{n}#{i}", dP) for i, dP in enumerate(ps.double_posets(n))]
    rows = []
    for name, dP in cases:
        if not ps.is_compatible(dP):
            continue
        fo = g.face_lattice(c.double_order_polytope(dP)).fvector
        fc = g.face_lattice(c.double_chain_polytope(dP)).fvector
        scope = "induced" if dP.is_induced else "extension"
        rows.append([name, scope, list(fo), list(fc), all(a <= b for a, b in zip(fo, fc))])
    return rows


def cmd_conjecture_scan(args, out):
    rows = conjecture_scan(args.max_n, args.altchain)
    if args.format == "table":
        out.write("exploratory scan, not a proof: does f_i(TOrd) <= f_i(TChain) hold?\n")
    emit(out, rows, args.format, ["double_poset", "scope", "f_tord", "f_tchain", "dominated"])
    if args.format == "table":
        for scope in ("induced", "extension"):
            tried = [r for r in rows if r[1] == scope]
            bad = [r[0] for r in tried if not r[4]]
            out.write(f"{scope} counterexamples: {len(bad)} of {len(tried)}" + (": " + ", ".join(bad) if bad else "") + "\n")


COMMANDS = {
    "check": cmd_check,
    "vertices": cmd_vertices,
    "facets": cmd_facets,
    "fvector": cmd_fvector,
    "volume": cmd_volume,
    "ehrhart": cmd_ehrhart,
    "triangulate": cmd_triangulate,
    "transfer": cmd_transfer,
    "groebner": cmd_groebner,
    "antiblock": cmd_antiblock,
}


def run(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        changes = _budget(args.budget)
        random.seed(args.seed)
        with config.use_budget(**changes):
            if args.command == "examples":
                cmd_examples(args, out)
            elif args.command == "conjecture-scan":
                cmd_conjecture_scan(args, out)
            else:
                COMMANDS[args.command](args, load_input(args), out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 1
    except DPosetError as exc:
        err.write(f"{type(exc).__name__}: {exc}\n")
        return 2
    except OSError as exc:
        err.write(f"usage error: {exc}\n")
        return 1
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
