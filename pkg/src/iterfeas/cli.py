"""Command-line surface.

Subcommands: check, sample, construct, eval, integrate, wn, vn, verify.
JSON goes to stdout; diagnostics to stderr.  Exit codes: 0 success,
1 infeasible target / non-membership / failed verification, 2 usage.
"""

import argparse
import json
import sys

from .construct import ConstructConfig, ConstructError, InfeasibleError, construct
from .curve import load_curve, save_curve
from .jets import Jet
from .region import (FeasibleTriple, RegionError, classify, sample_strict,
                     snap_classify)
from .verify import SUITES, run_suite
from .wn import VTuple, WnError, vn_member, witness, wn_member


def _emit(doc):
    print(json.dumps(doc, sort_keys=True))


def _fail(message, code=1):
    print(message, file=sys.stderr)
    return code


def _load_jets(path):
    with open(path) as fh:
        doc = json.load(fh)
    return (Jet("left", tuple(doc.get("left", ()))),
            Jet("right", tuple(doc.get("right", ()))))


def _write_csv(curve, path, points):
    from .plotting import curve_samples
    xs, fx, dfx = curve_samples(curve, points)
    with open(path, "w") as fh:
        fh.write("x,f,df\n")
        for row in zip(xs, fx, dfx):
            fh.write(",".join(repr(float(v)) for v in row) + "\n")


def cmd_check(args):
    try:
        triple = FeasibleTriple(args.a, args.b, args.c)
        rep = (snap_classify(triple, args.tol) if args.tol > 0
               else classify(triple))
    except RegionError as exc:
        return _fail(str(exc), 2)
    _emit({"triple": [args.a, args.b, args.c], "feasible": rep.feasible,
           "strict": rep.strict, "row": rep.row,
           "equality_flags": list(rep.equality_flags),
           "near_boundary": rep.near_boundary})
    if not rep.feasible or (args.strict and not rep.strict):
        return 1
    return 0


def cmd_sample(args):
    triples = []
    for i in range(args.count):
        t = sample_strict(args.seed + i, margin=args.margin)
        triples.append({"a": t.a, "b": t.b, "c": t.c, "seed": args.seed + i})
    _emit(triples)
    return 0


def cmd_construct(args):
    cfg = ConstructConfig(tol_target=args.tol)
    if args.jets:
        left, right = _load_jets(args.jets)
        from dataclasses import replace
        cfg = replace(cfg, left_jet=left, right_jet=right)
    target = FeasibleTriple(args.a, args.b, args.c)
    try:
        res = construct(target, cfg)
    except InfeasibleError as exc:
        return _fail(str(exc), 1)
    except ConstructError as exc:
        return _fail(f"construction failed: {exc}", 1)
    save_curve(res.curve, args.out)
    report = {"target": list(target.as_tuple()),
              "achieved": list(res.achieved.as_tuple()),
              "params": res.params, "iterations": res.iterations}
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(report, fh, sort_keys=True, indent=2)
            fh.write("\n")
    if args.csv:
        _write_csv(res.curve, args.csv, args.points)
    if args.plot:
        from .plotting import save_curve_plot
        save_curve_plot(res.curve, args.plot, args.points,
                        title=f"witness for {target.as_tuple()}")
    _emit(report)
    return 0


def cmd_eval(args):
    curve = load_curve(args.curve)
    xs = [float(tok) for tok in args.at.split(",") if tok]
    fn = curve.deriv if args.deriv else curve.eval
    _emit({"at": xs, "values": [fn(x) for x in xs],
           "deriv": bool(args.deriv)})
    return 0


def cmd_integrate(args):
    curve = load_curve(args.curve)
    value = curve.iterated_integral_quad(args.order, tol=1e-12)
    _emit({"order": args.order, "value": value})
    return 0


def cmd_wn(args):
    if len(args.b) != args.n + 1:
        return _fail(f"need {args.n + 1} values for n={args.n}", 2)
    member = wn_member(tuple(args.b))
    doc = {"n": args.n, "b": args.b, "member": member}
    if args.witness:
        try:
            g = witness(tuple(args.b))
        except WnError as exc:
            return _fail(str(exc), 1)
        save_curve(g, args.witness)
        doc["witness"] = args.witness
    _emit(doc)
    return 0 if member else 1


def cmd_vn(args):
    k = args.n + 1
    if len(args.data) != 2 * k:
        return _fail(f"need {2 * k} values (a0..a{args.n} b0..b{args.n})", 2)
    v = VTuple(tuple(args.data[:k]), tuple(args.data[k:]),
               tuple(args.interval))
    member = vn_member(v)
    _emit({"n": args.n, "interval": args.interval, "a": args.data[:k],
           "b": args.data[k:], "member": member})
    return 0 if member else 1


def cmd_verify(args):
    out = run_suite(args.suite, trials=args.trials, seed=args.seed)
    _emit(out)
    return 0 if out["passed"] else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="iterfeas",
        description="Feasibility and smooth witnesses for iterated-integral"
                    " targets of increasing functions on [0,1].")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="classify a target triple (a, b, c)")
    p.add_argument("a", type=float)
    p.add_argument("b", type=float)
    p.add_argument("c", type=float)
    p.add_argument("--strict", action="store_true",
                   help="exit 1 unless the triple is strictly feasible")
    p.add_argument("--tol", type=float, default=0.0,
                   help="snap entries onto boundaries within this distance"
                        " before classifying (default: exact)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sample", help="sample strictly feasible triples")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--margin", type=float, default=0.05)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("construct",
                       help="build a smooth increasing witness curve")
    p.add_argument("a", type=float)
    p.add_argument("b", type=float)
    p.add_argument("c", type=float)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--jets", help="JSON file with left/right jet values")
    p.add_argument("--out", required=True, help="curve JSON output path")
    p.add_argument("--report", help="report JSON output path")
    p.add_argument("--csv", help="CSV of (x, f, df) samples")
    p.add_argument("--plot", help="figure file (png/pdf) of f and Df")
    p.add_argument("--points", type=int, default=512)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("eval", help="evaluate a curve JSON file")
    p.add_argument("--curve", required=True)
    p.add_argument("--at", required=True, help="comma-separated abscissas")
    p.add_argument("--deriv", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("integrate", help="I^n f(1) of a curve JSON file")
    p.add_argument("--curve", required=True)
    p.add_argument("--order", type=int, required=True, choices=(1, 2, 3))
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("wn", help="membership in W_n (and optional witness)")
    p.add_argument("--n", type=int, required=True, choices=(0, 1, 2, 3))
    p.add_argument("b", type=float, nargs="+")
    p.add_argument("--witness", help="write a witness curve JSON here")
    p.set_defaults(func=cmd_wn)

    p = sub.add_parser("vn", help="membership in V_n[c, d]")
    p.add_argument("--n", type=int, required=True, choices=(0, 1, 2, 3))
    p.add_argument("--interval", type=float, nargs=2, default=(0.0, 1.0))
    p.add_argument("data", type=float, nargs="+",
                   help="a0..an then b0..bn")
    p.set_defaults(func=cmd_vn)

    p = sub.add_parser("verify", help="run a randomized verification suite")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
