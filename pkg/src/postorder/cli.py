"""Command line entry point: ``postorder <command> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional, Sequence

from . import harness
from .dwt import HaarCoefficients, analyze_levelwise, analyze_streaming, signal_depth, synthesize
from .dyadic import DyadicInterval, IntervalSet, enumerate_intervals, lowermost_level, subtree
from .geometry import carleson_order_interval, maximal_decomposition
from .norms import (
    HaarExpansion,
    best_lower_certificate,
    bmo_norm_sq_witness,
    certify_upper_bound_on_subspace,
    h1_norm_bounds,
    h2_norm_sq,
    hp_norm,
)
from .ordinals import Rearrangement, post_ordinal_closed, postorder_sequence
from .rationals import DyadicRational, RootTwoDyadic


def _interval(text: str) -> DyadicInterval:
    try:
        level, pos = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LEVEL,POS, got {text!r}") from None
    return DyadicInterval(level, pos)


def _read_text(path: Optional[str]) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _dump(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _rearrangement(name: str, N: int) -> Rearrangement:
    return Rearrangement.postorder(N) if name == "postorder" else Rearrangement.inverse_postorder(N)


# -- map / order -------------------------------------------------------------

def cmd_map(args) -> int:
    R = _rearrangement(args.rearrangement, args.N)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["level", "pos", "tau_level", "tau_pos"])
    for iv in enumerate_intervals(args.N):
        t = R(iv)
        w.writerow([iv.level, iv.pos, t.level, t.pos])
    return 0


def cmd_order(args) -> int:
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["level", "pos", "ordinal"])
    if args.kind == "lex":
        rows = [(iv, iv.index) for iv in enumerate_intervals(args.N)]
    else:
        rows = [(iv, n) for n, iv in enumerate(postorder_sequence(args.N), start=1)]
    for iv, n in rows:
        w.writerow([iv.level, iv.pos, n])
    return 0


# -- decompose ---------------------------------------------------------------

def _dot(N: int, d) -> str:
    members = set(d.order_interval)
    maximal = set(d.maximal)
    lines = ["digraph D {", "  node [shape=box, fontsize=10];"]
    for iv in enumerate_intervals(N):
        style = []
        if iv in members:
            style.append('style=filled, fillcolor="lightblue"')
        if iv in maximal:
            style.append("penwidth=3")
        attrs = ", ".join([f'label="{iv.level},{iv.pos}"'] + style)
        lines.append(f'  "{iv}" [{attrs}];')
    for iv in enumerate_intervals(N - 1) if N else []:
        for c in (DyadicInterval(iv.level + 1, 2 * iv.pos), DyadicInterval(iv.level + 1, 2 * iv.pos + 1)):
            lines.append(f'  "{iv}" -> "{c}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_decompose(args) -> int:
    N = args.N
    d = maximal_decomposition(args.j1, args.j2, N)
    rep = carleson_order_interval(args.j1, args.j2, N)
    out = d.to_json()
    out["carleson"] = {"value": rep.value.to_json(), "value_str": str(rep.value),
                       "argsup": rep.argsup.to_json() if rep.argsup else None}
    out["bounds"] = {"lower": rep.lower, "upper": rep.upper, "ok": rep.ok,
                     "lower_ok": rep.lower_ok, "upper_ok": rep.upper_ok}
    _dump(out)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(_dot(N, d))
    return 0 if d.ok else 1


# -- norms -------------------------------------------------------------------

def cmd_norm(args) -> int:
    f = HaarExpansion.from_json(json.loads(_read_text(args.input)))
    if args.kind == "bmo":
        value, arg = bmo_norm_sq_witness(f)
        _dump({"norm": "bmo", "norm_sq": value.to_json(), "norm_sq_str": str(value),
               "value": float(value) ** 0.5, "argsup": arg.to_json() if arg else None})
        return 0
    if args.p is None:
        raise SystemExit("norm hp needs --p")
    out = {"norm": "hp", "p": args.p, "value": hp_norm(f, args.p)}
    if args.p == 2 and f.is_exact:
        sq = h2_norm_sq(f)
        out["norm_sq"] = sq.to_json()
        out["norm_sq_str"] = str(sq)
    if args.p == 1 and f.is_exact:
        lo, hi = h1_norm_bounds(f)
        out["lower"] = lo.to_json()
        out["upper"] = hi.to_json()
    _dump(out)
    return 0


def _restriction(spec: str, N: int) -> IntervalSet:
    if spec == "all":
        return IntervalSet.full(N)
    kind, _, rest = spec.partition(":")
    iv = _interval(rest)
    iv.check_in(N)
    if kind == "subtree":
        return subtree(iv.level, iv.pos, N)
    if kind == "lex":
        # lowest level of the subtree at (L, K)
        return lowermost_level(iv.level, iv.pos, N)
    raise SystemExit(f"unknown restriction {spec!r}")


def cmd_opnorm(args) -> int:
    R = _rearrangement(args.rearrangement, args.N)
    C = _restriction(args.restrict, args.N)
    lo = best_lower_certificate(R, C)
    hi = certify_upper_bound_on_subspace(R, C, seed=args.seed, trials=args.trials)
    frac = lambda q: {"num": str(q.numerator), "den": str(q.denominator), "str": str(q)}
    _dump({
        "N": args.N,
        "rearrangement": args.rearrangement,
        "restriction": args.restrict,
        "lower_sq": frac(lo.ratio_sq),
        "upper_sq": frac(hi.ratio_sq),
        "witness_collection": lo.collection.to_json(),
        "argsup_interval": hi.argsup.to_json() if hi.argsup else None,
        "lower_certificate": lo.to_json(),
        "upper_certificate": hi.to_json(),
    })
    return 0 if lo.ok and hi.ok else 1


# -- verification --------------------------------------------------------------

def cmd_verify(args) -> int:
    if args.case is not None:
        if args.suite == "all":
            raise SystemExit("--case needs a single --suite")
        rep = harness.run_case(args.suite, json.loads(args.case))
        bundle = {"schema_version": harness.SCHEMA_VERSION, "n_max": None, "seed": None,
                  "passed": rep.passed, "suites": [rep.to_json(args.timings)],
                  "conjecture": harness.conjecture_summary([])}
    else:
        suites = None if args.suite == "all" else [args.suite]
        bundle = harness.verify_all(args.n_max, args.seed, suites=suites, timings=args.timings)
    if args.format == "table":
        print(harness.format_table(bundle))
    else:
        _dump(bundle)
    return 0 if bundle["passed"] else 1


def cmd_conjecture(args) -> int:
    summary = harness.conjecture_summary(harness.conjecture_scan(args.n_max))
    if args.format == "table":
        print(f"{'N':>3} {'l':>3} {'measured':>12} {'predicted':>12}  argsup    match  I[1,0] maximizer")
        for r in summary["records"]:
            print(f"{r['N']:>3} {r['l']:>3} {r['measured_str']:>12} {r['predicted_str']:>12}  "
                  f"I[{r['argsup'][0]},{r['argsup'][1]}]{'':<3} {str(r['match']):<6} {r['attained_at_I10']}")
        print(f"match rate: {summary['matches']}/{summary['total']}")
    else:
        _dump(summary)
    return 0


# -- DWT -------------------------------------------------------------------------

def _read_samples(text: str, exact: bool) -> list:
    text = text.strip()
    if text.startswith("["):
        raw = json.loads(text)
    else:
        raw = [line for line in text.splitlines() if line.strip()]
    if exact:
        return [DyadicRational.parse(str(x)) for x in raw]
    return [float(x) for x in raw]


def cmd_dwt_analyze(args) -> int:
    exact = not args.double
    samples = _read_samples(_read_text(args.input), exact)
    M = signal_depth(len(samples))
    if args.batch:
        c = analyze_levelwise(samples, exact)
        rows, trend = list(c.details.items()), c.trend
    else:
        s = analyze_streaming(samples, M, exact)
        rows, trend = list(s.emissions), s.trend
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["ordinal", "level", "pos", "value"] + (["half_exponent"] if exact else []))

    def row(ordinal, level, pos, x):
        if exact:
            return [ordinal, level, pos, str(x.value), x.half]
        return [ordinal, level, pos, repr(float(x))]

    for iv, x in rows:
        w.writerow(row(post_ordinal_closed(iv, M - 1), iv.level, iv.pos, x))
    w.writerow(row(0, "trend", "", trend))
    return 0


def cmd_dwt_synth(args) -> int:
    reader = csv.DictReader(io.StringIO(_read_text(args.input)))
    exact = "half_exponent" in (reader.fieldnames or [])
    details, trend = {}, None
    for r in reader:
        if exact:
            x = RootTwoDyadic(DyadicRational.parse(r["value"]), int(r["half_exponent"]))
        else:
            x = float(r["value"])
        if r["level"] == "trend":
            trend = x
        else:
            details[DyadicInterval(int(r["level"]), int(r["pos"]))] = x
    if trend is None:
        raise SystemExit("no trend row in input")
    M = signal_depth(len(details) + 1)
    values = synthesize(HaarCoefficients(M, trend, details, exact))
    for v in values:
        print(str(v) if exact else repr(v))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="postorder", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("map", help="lexicographically indexed permutation table as CSV")
    m.add_argument("--N", type=int, required=True)
    m.add_argument("--rearrangement", choices=["postorder", "inverse"], default="postorder")
    m.set_defaults(func=cmd_map)

    o = sub.add_parser("order", help="interval to ordinal table as CSV")
    o.add_argument("--N", type=int, required=True)
    o.add_argument("--kind", choices=["post", "lex"], default="post")
    o.set_defaults(func=cmd_order)

    d = sub.add_parser("decompose", help="maximal-interval decomposition of a postorder interval")
    d.add_argument("--N", type=int, required=True)
    d.add_argument("--j1", type=_interval, required=True, help="LEVEL,POS")
    d.add_argument("--j2", type=_interval, required=True, help="LEVEL,POS")
    d.add_argument("--dot", metavar="FILE", help="also write a Graphviz drawing")
    d.set_defaults(func=cmd_decompose)

    n = sub.add_parser("norm", help="BMO or H^p norm of a Haar expansion read as JSON")
    n.add_argument("kind", choices=["bmo", "hp"])
    n.add_argument("--p", type=float)
    n.add_argument("--input", default="-")
    n.set_defaults(func=cmd_norm)

    r = sub.add_parser("opnorm", help="certified operator-norm bounds on BMO")
    r.add_argument("--N", type=int, required=True)
    r.add_argument("--rearrangement", choices=["postorder", "inverse"], default="postorder")
    r.add_argument("--restrict", default="all", help="subtree:L,K | lex:L,K | all")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--trials", type=int, default=64)
    r.set_defaults(func=cmd_opnorm)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", choices=["all", *harness.SUITES], default="all")
    v.add_argument("--n-max", type=int, default=6)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--format", choices=["json", "table"], default="json")
    v.add_argument("--case", help="JSON case dict taken from a failure, re-run alone")
    v.add_argument("--timings", action="store_true", help="include wall-clock times")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("conjecture", help="measured vs predicted Carleson constants")
    c.add_argument("--n-max", type=int, default=8)
    c.add_argument("--format", choices=["json", "table"], default="table")
    c.set_defaults(func=cmd_conjecture)

    w = sub.add_parser("dwt", help="Haar transform of a signal")
    wsub = w.add_subparsers(dest="dwt_command", required=True)
    a = wsub.add_parser("analyze")
    g = a.add_mutually_exclusive_group()
    g.add_argument("--stream", action="store_true", help="single pass, emission order (default)")
    g.add_argument("--batch", action="store_true", help="level by level")
    g2 = a.add_mutually_exclusive_group()
    g2.add_argument("--exact", action="store_true", help="dyadic times powers of sqrt 2 (default)")
    g2.add_argument("--double", action="store_true")
    a.add_argument("--input", default="-")
    a.set_defaults(func=cmd_dwt_analyze)
    s = wsub.add_parser("synth")
    s.add_argument("--input", default="-")
    s.set_defaults(func=cmd_dwt_synth)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"postorder: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
