"""Command-line interface.

Verbs: suite, check, mahler, evr, optimize-position, constants.
Body SPEC arguments are inline JSON or @path-to-json-file.  A JSON config
file can preset any suite flag; explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import bodies, ellipsoids, functionals, harness, measures, positions
from .errors import ConvexLabError
from .records import ChainRecord, InequalityRecord


def _load_spec(spec: str) -> dict:
    try:
        if spec.startswith("@"):
            with open(spec[1:]) as fh:
                return json.load(fh)
        return json.loads(spec)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConvexLabError(f"cannot read body spec {spec!r}: {exc}") from exc


def _body(spec: str):
    return bodies.body_from_spec(_load_spec(spec))


def _print_json(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2))


def _record_json(rec):
    if isinstance(rec, InequalityRecord):
        return {
            "name": rec.name,
            "dim": rec.dim,
            "lhs": rec.lhs,
            "rhs": rec.rhs,
            "gap": rec.gap,
            "tolerance": rec.tolerance,
            "pass": rec.passed,
            "body": rec.body,
            "body2": rec.body2,
            "flags": list(rec.flags),
        }
    if isinstance(rec, ChainRecord):
        return {
            "name": rec.name,
            "dim": rec.dim,
            "lower": rec.lower,
            "middle": rec.middle,
            "upper": rec.upper,
            "tolerance": rec.tolerance,
            "pass": rec.passed,
            "body": rec.body,
            "body2": rec.body2,
        }
    raise TypeError(type(rec))


CHECKS = {
    "prop11": lambda k, l: list(functionals.check_prop11(k, l)),
    "chain": lambda k, l: [functionals.entropy_chain(k, l)],
    "gardner": lambda k, l: [functionals.gardner_functional(k, l, "gardner")],
    "gardner2": lambda k, l: [functionals.gardner_functional(k, l, "gardner2")],
    "minkowski": lambda k, l: [measures.minkowski_first_check(l, k)],
    "prop21": lambda k, l: [functionals.prop21_bound(k, l)],
    "reverse-holder": lambda k, l: [functionals.reverse_holder_check(k, l)],
    "cor22": lambda k, _l: list(functionals.corollary22_bound(k)),
    "theorem11": lambda k, _l: [ellipsoids.theorem11_check(k)],
    "john": lambda k, _l: [ellipsoids.john_containment_check(k)],
}


def _cmd_suite(args) -> int:
    cfg_dict = {}
    if args.config:
        with open(args.config) as fh:
            cfg_dict = json.load(fh)
    if args.dims is not None:
        cfg_dict["dims"] = [int(d) for d in args.dims.split(",")]
    if args.seed is not None:
        cfg_dict["seed"] = args.seed
    if args.random_symmetric is not None:
        cfg_dict["n_random_symmetric"] = args.random_symmetric
    if args.random_general is not None:
        cfg_dict["n_random_general"] = args.random_general
    if args.resolution is not None:
        cfg_dict["resolutions"] = {str(d): args.resolution for d in cfg_dict.get("dims", [2])}
    config = harness.SuiteConfig.from_dict(cfg_dict)
    report = harness.run_suite(config)
    fmt = args.format or config.output_format
    path = args.out or config.output_path
    if path:
        harness.emit_report(report, fmt, path)
    summary = report.summary
    print(f"rows={summary['rows']} passed={summary['passed']} failed={summary['failed']}")
    if path:
        print(f"report written to {path} ({fmt})")
    return 0 if report.all_pass else 1


def _cmd_check(args) -> int:
    if args.ineq not in CHECKS:
        print(f"unknown inequality {args.ineq!r}; choose from {sorted(CHECKS)}", file=sys.stderr)
        return 2
    k = _body(args.body)
    l = _body(args.body2) if args.body2 else None
    recs = CHECKS[args.ineq](k, l)
    for rec in recs:
        _print_json(_record_json(rec))
    return 0 if all(r.passed for r in recs) else 1


def _cmd_mahler(args) -> int:
    k = _body(args.body)
    vol = bodies.volume(k)
    pvol = functionals.polar_volume(k)
    _print_json(
        {
            "body": bodies.describe(k),
            "dim": k.dim,
            "volume": vol,
            "polar_volume": pvol,
            "volume_product": vol * pvol,
        }
    )
    return 0


def _cmd_evr(args) -> int:
    result = ellipsoids.exterior_volume_ratio(_body(args.body))
    _print_json(result.to_json())
    return 0


def _cmd_optimize(args) -> int:
    result = positions.optimize_M(_body(args.body), restarts=args.restarts, seed=args.seed)
    _print_json(result.to_json())
    return 0


def _cmd_constants(args) -> int:
    sym, gen = ellipsoids.barthe_constants(args.dim)
    _print_json({"dim": args.dim, "symmetric_bound": sym, "general_bound": gen})
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="convexlab",
        description="Numerical convex geometry: volume products, log-Minkowski functionals, "
        "Loewner ellipsoids, SL(n) positions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("suite", help="run the inequality suite on the default corpus")
    p.add_argument("--config", help="JSON config file (flags override it)")
    p.add_argument("--dims", help="comma-separated dimensions, e.g. 2,3")
    p.add_argument("--seed", type=int)
    p.add_argument("--resolution", type=int, help="override quadrature resolution for all dims")
    p.add_argument("--random-symmetric", type=int, help="number of random symmetric polytopes")
    p.add_argument("--random-general", type=int, help="number of random centered polytopes")
    p.add_argument("--out", help="report output path")
    p.add_argument("--format", choices=["csv", "json"])
    p.set_defaults(fn=_cmd_suite)

    p = sub.add_parser("check", help="run one inequality check on explicit bodies")
    p.add_argument("--ineq", required=True, help=f"one of {sorted(CHECKS)}")
    p.add_argument("--body", required=True, help="body spec: inline JSON or @file")
    p.add_argument("--body2", help="second body spec where the inequality needs one")
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("mahler", help="volume product of a body")
    p.add_argument("--body", required=True)
    p.set_defaults(fn=_cmd_mahler)

    p = sub.add_parser("evr", help="exterior volume ratio / Loewner ellipsoid")
    p.add_argument("--body", required=True)
    p.set_defaults(fn=_cmd_evr)

    p = sub.add_parser("optimize-position", help="maximize the SL(n) mean-width functional")
    p.add_argument("--body", required=True)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--seed", type=int, default=24137)
    p.set_defaults(fn=_cmd_optimize)

    p = sub.add_parser("constants", help="universal volume-product lower-bound constants")
    p.add_argument("--dim", type=int, required=True)
    p.set_defaults(fn=_cmd_constants)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ConvexLabError as exc:
        print(f"error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
