"""Command-line entry point.

Exit status: 0 on success, 1 on usage errors, 2 when a checked bound fails.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import experiments
from ._backend import BACKEND
from .elimination import OptimizerConfig
from .exact import DEFAULT_CAP
from .graphs import parse_graph_spec

log = logging.getLogger("rqaoa")

GLOBAL_DEFAULTS = dict(seed=0, out=None, format="csv", jobs=1, grid=64, refine_iters=200,
                       exact_cap=DEFAULT_CAP, verbose=False)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _global_options():
    parent = argparse.ArgumentParser(add_help=False)
    s = argparse.SUPPRESS
    parent.add_argument("--seed", type=int, default=s, help="master RNG seed (default 0)")
    parent.add_argument("--out", default=s, help="output path (default stdout)")
    parent.add_argument("--format", choices=("csv", "json"), default=s)
    parent.add_argument("--jobs", type=int, default=s, help="worker processes")
    parent.add_argument("--grid", type=int, default=s, help="angle grid resolution (default 64)")
    parent.add_argument("--refine-iters", type=int, default=s, help="pattern-search polls (default 200)")
    parent.add_argument("--exact-cap", type=int, default=s,
                        help=f"largest n solved by exhaustive search (default {DEFAULT_CAP})")
    parent.add_argument("-v", "--verbose", action="store_true", default=s)
    return parent


def _pairs(text):
    try:
        return [tuple(int(x) for x in item.split(":")) for item in text.split(",") if item]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected n:R pairs, got {text!r}")


def build_parser():
    common = _global_options()
    parser = _Parser(prog="rqaoa", description=__doc__.splitlines()[0], parents=[common])
    parser.add_argument("--backend", action="version", version=f"kernels: {BACKEND}",
                        help="print the active kernel backend and exit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("fig1", parents=[common], help="QAOA vs RQAOA on random 3-regular +-1 instances")
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--nc", type=int, default=6)
    p.add_argument("--instances", type=int, default=16)
    p.add_argument("--restarts", type=int, default=100, help="local-search restarts when n > exact cap")
    p.add_argument("--trace", help="write per-instance RQAOA traces as JSON lines")

    p = sub.add_parser("ring", parents=[common], help="ring-of-disagrees bounds and GHZ-block saturation")
    p.add_argument("--cases", type=_pairs, default=[(6, 1), (12, 1), (10, 2), (14, 3)],
                   help="comma-separated n:R pairs (default 6:1,12:1,10:2,14:3)")

    p = sub.add_parser("appd", parents=[common], help="1-local rule vs QAOA vs RQAOA on twisted rings")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--sample", type=int, default=0, help="number of random bitstrings (0 = all)")
    p.add_argument("--nc", type=int, default=4)

    p = sub.add_parser("cheeger", parents=[common], help="Cheeger constant and boundary-energy identity")
    p.add_argument("--graph", action="append", required=True,
                   help="graph spec such as ring:n=12 or rr3:n=14,seed=3 (repeatable)")

    p = sub.add_parser("oracle-check", parents=[common],
                       help="closed-form level-1 correlations vs statevector simulation")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--max-n", type=int, default=10)
    return parser


def run(args):
    config = OptimizerConfig(grid=args.grid, refine_iters=args.refine_iters)
    if args.command == "fig1":
        traces = [] if args.trace else None
        report = experiments.run_fig1(args.n, args.nc, args.instances, args.seed, config,
                                      args.exact_cap, args.restarts, args.jobs, traces)
        if traces is not None:
            with open(args.trace, "w") as fh:
                for item in traces:
                    fh.write(json.dumps(item) + "\n")
        return report
    if args.command == "ring":
        return experiments.run_ring_suite(args.cases, args.grid)
    if args.command == "appd":
        if args.n % 6:
            raise UsageError("appd needs n divisible by 6")
        return experiments.run_appendix_d(args.n, args.sample, args.seed, args.nc, config,
                                          args.exact_cap, args.grid, args.jobs)
    if args.command == "cheeger":
        return experiments.run_cheeger([parse_graph_spec(g) for g in args.graph])
    return experiments.run_oracle_check(args.count, args.max_n, args.seed)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for key, value in GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        report = run(args)
    except (UsageError, ValueError) as exc:
        print(f"rqaoa: error: {exc}", file=sys.stderr)
        return 1
    text = report.dump(args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for v in report.violations:
        print(f"rqaoa: check failed: {v}", file=sys.stderr)
    return 2 if report.violations else 0


if __name__ == "__main__":
    sys.exit(main())
