"""Command-line front end.

Machine-readable output (JSON lines or CSV) goes to stdout; timings and other
human-facing notes go to stderr. Exit codes: 0 ok, 1 identity failure,
2 usage error, 3 numerical failure.
"""

import argparse
import csv
import io
import json
import math
import sys
import time

from .cases import CASES, parse_case_range
from .errors import DomainError, NumericalError
from .pricer import METHODS, MarketParams, convergence_scan, normalize, price

EXIT_OK, EXIT_IDENTITY, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _dump(obj):
    return json.dumps(obj, sort_keys=True)


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _market_flags(p, required):
    for name in ("r", "sigma", "T", "S0", "K"):
        p.add_argument(f"--{name}", type=float, required=required)


def _market(args):
    try:
        return MarketParams(args.r, args.sigma, args.T, args.S0, args.K)
    except DomainError as e:
        raise UsageError(str(e)) from e


def _result_dict(res, payoff):
    d = res.to_dict()
    # wall-clock time would break byte-identical output
    d["diagnostics"] = {k: v for k, v in d["diagnostics"].items() if k != "seconds"}
    if payoff == "call":
        d.pop("put")
    elif payoff == "put":
        d.pop("call")
    return d


def cmd_price(args, out):
    res = price(_market(args), args.method, args.points)
    print(f"priced in {res.diagnostics['seconds']:.3f} s", file=sys.stderr)
    out.write(_dump(_result_dict(res, args.payoff)) + "\n")
    return EXIT_OK


TABLE_COLUMNS = ["case", "r", "sigma", "T", "S0", "K", "nu", "tau", "k", "put", "call", "method", "nodes"]


def cmd_table(args, out):
    try:
        cases = parse_case_range(args.cases)
    except ValueError as e:
        raise UsageError(str(e)) from e
    rows = []
    for c in cases:
        m = CASES[c]
        res = price(m, args.method)
        npar = normalize(m)
        rows.append([c, m.r, m.sigma, m.T, m.S0, m.K, npar.nu, npar.tau, npar.k,
                     res.put, res.call, res.method, res.nodes_used])
        print(f"case {c}: {res.diagnostics['seconds']:.3f} s", file=sys.stderr)
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(TABLE_COLUMNS)
        for row in rows:
            w.writerow([repr(v) if isinstance(v, float) else v for v in row])
    else:
        cells = [TABLE_COLUMNS] + [[f"{v:.10g}" if isinstance(v, float) else str(v) for v in row] for row in rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(TABLE_COLUMNS))]
        for r in cells:
            out.write("  ".join(s.rjust(wd) for s, wd in zip(r, widths)) + "\n")
    return EXIT_OK


def _parse_n_list(text):
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError as e:
        raise UsageError(f"bad --n-list {text!r}") from e
    if not vals or any(v < 4 for v in vals):
        raise UsageError("--n-list needs one or more orders >= 4")
    return vals


def cmd_convergence(args, out):
    if args.case not in CASES:
        raise UsageError(f"unknown case {args.case}; valid cases are 1-{len(CASES)}")
    ns = _parse_n_list(args.n_list)
    rows = convergence_scan(CASES[args.case], ns, args.method)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "put", "call", "delta_call"])
    prev = None
    for n, put, call in rows:
        w.writerow([n, repr(put), repr(call), "" if prev is None else repr(abs(call - prev))])
        prev = call
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(buf.getvalue())
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        out.write(buf.getvalue())
    return EXIT_OK


def cmd_mc(args, out):
    from .mc import McConfig, simulate_both
    if args.case is not None:
        if args.case not in CASES:
            raise UsageError(f"unknown case {args.case}; valid cases are 1-{len(CASES)}")
        market = CASES[args.case]
    else:
        if any(getattr(args, n) is None for n in ("r", "sigma", "T", "S0", "K")):
            raise UsageError("mc needs --case or all of --r --sigma --T --S0 --K")
        market = _market(args)
    try:
        cfg = McConfig(args.paths, args.steps, args.seed, args.antithetic)
    except ValueError as e:
        raise UsageError(str(e)) from e
    t0 = time.perf_counter()
    put, call = simulate_both(market, cfg)
    print(f"simulated in {time.perf_counter() - t0:.2f} s", file=sys.stderr)
    out.write(_dump({"call": call.to_dict(), "put": put.to_dict(),
                     "config": {"antithetic": cfg.antithetic, "paths": cfg.paths,
                                "seed": cfg.seed, "steps": cfg.steps}}) + "\n")
    return EXIT_OK


def cmd_verify(args, out):
    from .identities import run_suite
    ok = True
    for rep in run_suite(args.suite, args.tol_scale):
        d = rep.to_dict()
        if not math.isfinite(d["max_rel_residual"]):
            d["max_rel_residual"] = None
        out.write(_dump(d) + "\n")
        out.flush()
        ok &= rep.passed
    return EXIT_OK if ok else EXIT_IDENTITY


def build_parser():
    from .identities import SUITE_NAMES
    p = _Parser(prog="asianspectral", description="Spectral pricing of arithmetic Asian options.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("price", help="price one contract")
    _market_flags(sp, True)
    sp.add_argument("--method", choices=METHODS, default="laguerre")
    sp.add_argument("--points", type=_positive_int, default=None,
                    help="Laguerre nodes or trapezoid panels (default: pricer policy)")
    sp.add_argument("--payoff", choices=("both", "call", "put"), default="both")
    sp.set_defaults(func=cmd_price)

    st = sub.add_parser("table", help="price the built-in cases")
    st.add_argument("--cases", default="1-7")
    st.add_argument("--format", choices=("csv", "text"), default="csv")
    st.add_argument("--method", choices=METHODS, default="laguerre")
    st.set_defaults(func=cmd_table)

    sc = sub.add_parser("convergence", help="call price against quadrature order")
    sc.add_argument("--case", type=int, required=True)
    sc.add_argument("--n-list", required=True)
    sc.add_argument("--method", choices=METHODS, default="laguerre")
    sc.add_argument("--out", default=None)
    sc.set_defaults(func=cmd_convergence)

    sm = sub.add_parser("mc", help="Monte Carlo estimate")
    sm.add_argument("--case", type=int, default=None)
    _market_flags(sm, False)
    sm.add_argument("--paths", type=_positive_int, default=1_000_000)
    sm.add_argument("--steps", type=_positive_int, default=1000)
    sm.add_argument("--seed", type=int, default=42)
    sm.add_argument("--antithetic", action=argparse.BooleanOptionalAction, default=True)
    sm.set_defaults(func=cmd_mc)

    sv = sub.add_parser("verify", help="run the identity checks")
    sv.add_argument("--suite", choices=SUITE_NAMES, default="all")
    sv.add_argument("--tol-scale", type=float, default=1.0)
    sv.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "tol_scale", 1.0) <= 0:
            raise UsageError("--tol-scale must be positive")
        return args.func(args, out)
    except UsageError as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE
    except (NumericalError, ArithmeticError) as e:
        print(f"numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as e:
        # e.g. a quadrature order outside the supported range
        print(f"invalid argument: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
