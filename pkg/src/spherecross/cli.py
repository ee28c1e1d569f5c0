"""Command-line front end.

Subcommands: analytic, sweep, pairprob, simulate, complete, copies, selftest.
Options can also come from ``--config FILE`` holding ``key = value`` lines
with the same names as the long flags; explicit flags win.  Seeds default to
0 and are never read from the environment.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from spherecross import analytic, drawing, io, montecarlo, selftest
from spherecross.sampling import SeededStream

ANGLE_OPTIONS = ("d", "d_min", "d_max")


def read_config(path: str) -> dict:
    values = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, value = (part.strip() for part in line.split("=", 1))
            values[key.lstrip("-").replace("-", "_")] = value
    return values


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file with default option values")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("--format", choices=("json", "csv"),
                        help="output format (default: csv for sweep, json otherwise)")
    common.add_argument("--degrees", action="store_true", help="angles are given in degrees")
    common.add_argument("--threads", type=_positive_int, default=os.cpu_count() or 1,
                        help="parallel trial workers (results do not depend on it)")

    parser = argparse.ArgumentParser(prog="spherecross", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("analytic", parents=[common], help="closed forms at one threshold")
    p.add_argument("--d", type=float)
    p.add_argument("--n", type=int, default=1000)

    p = sub.add_parser("sweep", parents=[common], help="g(d) and friends on a grid")
    p.add_argument("--d-min", type=float, default=1e-3)
    p.add_argument("--d-max", type=float, default=math.pi)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--n", type=int, default=1000)

    p = sub.add_parser("pairprob", parents=[common], help="Monte Carlo joint crossing probability")
    p.add_argument("--d", type=float, default=math.pi)
    p.add_argument("--trials", type=_positive_int, default=1_000_000)
    p.add_argument("--seed", type=_seed, default=0)

    p = sub.add_parser("simulate", parents=[common], help="normalised crossing ratio of drawings")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=float)
    p.add_argument("--trials", type=_positive_int, default=20)
    p.add_argument("--seed", type=_seed, default=0)

    p = sub.add_parser("complete", parents=[common], help="complete geodesic drawing (d = pi)")
    p.add_argument("--n", type=int, default=60)
    p.add_argument("--trials", type=_positive_int, default=50)
    p.add_argument("--seed", type=_seed, default=0)

    p = sub.add_parser("copies", parents=[common], help="disjoint planar copies of one drawing")
    p.add_argument("--n", type=int, default=50)
    p.add_argument("--d", type=float, default=0.6)
    p.add_argument("--k", type=_positive_int, default=2)
    p.add_argument("--seed", type=_seed, default=0)

    p = sub.add_parser("selftest", parents=[common], help="oracle and property checks")
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--full", action="store_true", help="ten times larger samples")
    parser.subcommands = sub.choices
    return parser


def parse_args(argv=None) -> argparse.Namespace:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    name = next((a for a in argv if a in parser.subcommands), None)
    if known.config and name:
        try:
            defaults = read_config(known.config)
        except (OSError, ValueError) as exc:
            parser.error(str(exc))
        subparser = parser.subcommands[name]
        unknown = set(defaults) - {a.dest for a in subparser._actions}
        if unknown:
            parser.error(f"unknown config keys: {', '.join(sorted(unknown))}")
        # argparse runs string defaults through each option's type
        subparser.set_defaults(**defaults)
    args = parser.parse_args(argv)
    for flag in ("degrees", "full"):
        if isinstance(getattr(args, flag, None), str):
            setattr(args, flag, getattr(args, flag).lower() in ("1", "true", "yes", "on"))
    if args.format is None:
        args.format = "csv" if args.subcommand == "sweep" else "json"
    _validate(parser, args)
    return args


def _validate(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    for name in ("n", "d"):
        if hasattr(args, name) and getattr(args, name) is None:
            parser.error(f"--{name} is required for {args.subcommand}")
    for name in ANGLE_OPTIONS:
        if getattr(args, name, None) is not None and args.degrees:
            setattr(args, name, math.radians(getattr(args, name)))
    d = getattr(args, "d", None)
    if d is not None and not 0.0 < d <= math.pi:
        parser.error(f"--d must lie in (0, pi], got {d}")
    n = getattr(args, "n", None)
    if n is not None:
        need = 4 if args.subcommand in ("simulate", "complete") else 2
        if n < need:
            parser.error(f"--n must be at least {need}")
    if args.subcommand == "sweep":
        if not 0.0 < args.d_min < args.d_max <= math.pi:
            parser.error("need 0 < --d-min < --d-max <= pi")
        if args.steps < 2:
            parser.error("--steps must be at least 2")


def resolved_config(args: argparse.Namespace) -> dict:
    skip = {"config", "output", "threads"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _analytic(args) -> dict:
    params = analytic.AnalyticParams(args.d, args.n)
    return {
        "d": args.d,
        "ratio_function": analytic.ratio_function(args.d),
        "joint_cross_probability": analytic.joint_cross_probability(args.d),
        "conditional_cross_probability": analytic.conditional_cross_probability(args.d),
        "cap_area": analytic.cap_area(args.d),
        "expected_edges": analytic.expected_edges(params),
        "expected_crossings": analytic.expected_crossings(params),
        "finite_n_ratio": analytic.finite_n_ratio_target(params) if args.n >= 4 else None,
        "midrange_upper_limit": analytic.midrange_upper_limit(),
    }


def _sweep_rows(args):
    for d in np.linspace(args.d_min, args.d_max, args.steps):
        d = float(d)
        params = analytic.AnalyticParams(d, args.n)
        yield [io.FORMAT_VERSION, repr(d), repr(analytic.ratio_function(d)),
               repr(analytic.joint_cross_probability(d)),
               repr(analytic.expected_edges(params) / args.n), args.n]


def _experiment(args, mode: str, n: int, d: float) -> montecarlo.ExperimentSummary:
    config = montecarlo.ExperimentConfig(n, d, args.trials, args.seed, mode, args.threads)
    return montecarlo.run_experiment(config)


def _csv_header(args) -> str:
    return "".join(f"# {k}={v}\n" for k, v in resolved_config(args).items())


def dispatch(args: argparse.Namespace) -> tuple[int, str]:
    """Run the subcommand; returns ``(exit status, serialised output)``."""
    cfg = resolved_config(args)
    if args.subcommand == "analytic":
        body = _analytic(args)
        if args.format == "csv":
            return 0, _csv_header(args) + io.rows_to_csv(["format", *body], [[1, *body.values()]])
        return 0, io.dumps({"format": io.FORMAT_VERSION, "config": cfg, "result": body})
    if args.subcommand == "sweep":
        rows = list(_sweep_rows(args))
        if args.format == "csv":
            return 0, _csv_header(args) + io.rows_to_csv(io.SWEEP_COLUMNS, rows)
        records = [dict(zip(io.SWEEP_COLUMNS, [r[0], *map(float, r[1:5]), r[5]])) for r in rows]
        return 0, io.dumps({"format": io.FORMAT_VERSION, "config": cfg, "rows": records})
    if args.subcommand in ("pairprob", "simulate", "complete"):
        mode, n, d = {
            "pairprob": ("pair_probability", 4, getattr(args, "d", math.pi)),
            "simulate": ("drawing_ratio", getattr(args, "n", 4), getattr(args, "d", math.pi)),
            "complete": ("complete_graph", getattr(args, "n", 4), math.pi),
        }[args.subcommand]
        summary = _experiment(args, mode, n, d)
        if args.format == "csv":
            return 0, _csv_header(args) + io.summary_to_csv(summary)
        doc = io.summary_to_dict(summary, include_trials=args.subcommand != "pairprob")
        doc["cli_config"] = cfg
        return 0, io.dumps(doc)
    if args.subcommand == "copies":
        d = drawing.build_threshold_drawing(SeededStream(args.seed, 0), args.n, args.d)
        report = drawing.count_crossings(d, workers=args.threads)
        planar, big = drawing.replicate_copies(d, args.k, drawing.choose_pole(d, seed=args.seed), report)
        planar_count = drawing.count_planar_crossings(planar)
        body = {
            "single": report.to_dict(), "combined": big.to_dict(),
            "planar_crossings": planar_count.crossings, "tangencies": planar_count.tangencies,
            "ratio_identity": big.exact_ratio == report.exact_ratio,
            "exact_ratio": str(report.exact_ratio),
        }
        return 0, io.dumps({"format": io.FORMAT_VERSION, "config": cfg, "result": body})
    if args.subcommand == "selftest":
        checks = selftest.run_selftest(args.seed, quick=not args.full)
        body = [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks]
        status = 0 if all(c.passed for c in checks) else 1
        return status, io.dumps({"format": io.FORMAT_VERSION, "config": cfg, "checks": body})
    raise AssertionError(args.subcommand)


def main(argv=None) -> int:
    args = parse_args(argv)
    status, text = dispatch(args)
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.subcommand == "selftest":
        for check in selftest_lines(text):
            print(check, file=sys.stderr)
    return status


def selftest_lines(text: str):
    for c in json.loads(text)["checks"]:
        yield f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}: {c['detail']}"


if __name__ == "__main__":
    sys.exit(main())
