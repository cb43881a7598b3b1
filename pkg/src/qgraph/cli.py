"""Command-line interface: enumerate, betti, emit, evaluate, verify.

Exit codes: 0 success, 1 a verification check failed, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import verify
from .cochain import Cochain
from .cocycles import BadPermutation, b_graph, c_graph, pi, psi
from .enumeration import LimitExceeded, enumerate_basis, g4_basis, sector_basis
from .graphcore import G1, G2, G3, G4, GraphError
from .homology import betti_record
from .superalg import evaluate_graph, load_lie

SUBCOMPLEXES = {"G1": G1, "G2": G2, "G3": G3, "G4": G4}


class UsageError(Exception):
    pass


def dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _ints(text):
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _positive(text):
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


# --- commands ---------------------------------------------------------------


def cmd_enumerate(args, out):
    sub = SUBCOMPLEXES[args.subcomplex]
    if sub == G4:
        if not args.white_profile:
            graphs = g4_basis(args.n_in, args.m_out, args.k, limit=args.limit)
        else:
            graphs = enumerate_basis(args.n_in, args.m_out, args.k, _ints(args.white_profile),
                                     G4, limit=args.limit)
    else:
        graphs = sector_basis(sub, args.n_in, args.m_out, args.k, limit=args.limit)
    for g in graphs:
        if args.format == "dot":
            out.write(g.to_dot() + "\n")
        else:
            out.write(dumps(g.to_json()) + "\n")
    return 0


def cmd_betti(args, out):
    sub = SUBCOMPLEXES[args.subcomplex]
    rec = betti_record(sub, args.n_in, args.m_out, args.k, _ints(args.white_profile), args.limit)
    out.write(dumps(rec.to_json()) + "\n")
    return 0


def build_series(series, n, perm=None):
    if series == "pi":
        return pi(n)
    if series == "psi":
        return psi(n)
    make = b_graph if series == "B" else c_graph
    g, sign = make(n, perm)
    return Cochain.from_graph(g, sign)


def cmd_emit(args, out):
    c = build_series(args.series, args.n, _ints(args.perm) or None)
    if args.format == "dot":
        for i, (g, coeff) in enumerate(c.items()):
            out.write(f"// coefficient {coeff}\n" + g.to_dot(f"G{i}") + "\n")
    else:
        out.write(dumps(c.to_json()) + "\n")
    return 0


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def cmd_evaluate(args, out):
    c = Cochain.from_json(_read_json(args.cochain))
    lie = load_lie(args.algebra)
    T = evaluate_graph(c, lie, zero_whites=args.zero_whites)
    out.write(dumps(T.to_json()) + "\n")
    return 0


def run_suite(args):
    name = args.suite
    if name == "d2zero":
        return verify.suite_d2zero(args.max_vertices or 5, args.max_g2)
    if name == "laplacian":
        return verify.suite_laplacian(args.max_vertices or 5)
    if name == "dims":
        return verify.suite_dims(args.max_n or 4)
    if name == "psi-pi":
        return verify.suite_psi_pi(args.max_n or 2)
    return verify.suite_lie_example(load_lie(args.algebra))


def cmd_verify(args, out):
    checks = run_suite(args)
    report = {"suite": args.suite, "checks": checks,
              "passed": all(c["status"] != "fail" for c in checks)}
    out.write(dumps(report) + "\n")
    return 0 if report["passed"] else 1


# --- parser -----------------------------------------------------------------


def _sector_args(p):
    p.add_argument("--subcomplex", choices=sorted(SUBCOMPLEXES), default="G3")
    p.add_argument("--in", dest="n_in", type=int, required=True)
    p.add_argument("--out", dest="m_out", type=int, required=True)
    p.add_argument("--k", type=int, required=True,
                   help="degree (G1-G3); for G4 the vertex count, or the black "
                        "count when --white-profile is given")
    p.add_argument("--white-profile", default="",
                   help="G4 only: comma-separated in-arities of the white vertices")
    p.add_argument("--limit", type=_positive, default=None, help="maximum vertex count")


def build_parser():
    parser = argparse.ArgumentParser(prog="qgraph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list the graphs of a sector as JSON lines")
    _sector_args(p)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("betti", help="cohomology dimension of a sector")
    _sector_args(p)
    p.set_defaults(func=cmd_betti)

    for name in ("emit", "emit-cocycle"):
        p = sub.add_parser(name, help="write an explicit cocycle")
        p.add_argument("--series", choices=("pi", "psi", "B", "C"), required=True)
        p.add_argument("--n", type=_positive, required=True)
        p.add_argument("--perm", default="", help="comma-separated leg order")
        p.add_argument("--dot", dest="format", action="store_const", const="dot", default="json")
        p.add_argument("--format", choices=("json", "dot"), dest="format")
        p.set_defaults(func=cmd_emit)

    p = sub.add_parser("evaluate", help="evaluate a cochain on a Lie algebra")
    p.add_argument("--cochain", required=True, help="cochain JSON file")
    p.add_argument("--algebra", required=True, help="built-in name or Lie algebra JSON file")
    p.add_argument("--zero-whites", action="store_true",
                   help="treat white vertices as zero instead of failing")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=verify.SUITES)
    p.add_argument("--max-n", type=_positive, default=None)
    p.add_argument("--max-vertices", type=_positive, default=None)
    p.add_argument("--max-g2", type=_positive, default=8)
    p.add_argument("--algebra", default="sl2")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except LimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, GraphError, BadPermutation, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
