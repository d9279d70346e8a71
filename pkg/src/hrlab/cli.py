"""``hrlab`` command line.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 for unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .errors import HRLabError
from .harness import (
    ALL_CHECKS,
    FibrationModel,
    SweepConfig,
    check_instance,
    restriction_report,
    run_fibration_sweep,
    run_sweep,
    search,
)
from .hodge_riemann import homotopy_sweep
from .io import ParseError, dump_json, hyperplane_from_json, instance_from_json, load_json
from .restriction import Hyperplane

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    common.add_argument("--tol", type=float, default=None, help="override the global 1e-10 threshold")
    common.add_argument("--report", default=None, help="write the JSON report here (default: stdout)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="hrlab", description="Verify linear mixed Hodge-Riemann relations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="verify one instance file")
    p.add_argument("instance")
    p.add_argument("--steps", type=int, default=8, help="homotopy grid size")
    p.add_argument("--samples", type=int, default=0, help="pointwise samples for the local estimate")
    p.add_argument("--no-validate", action="store_true", help="skip the positivity hypotheses on load")

    p = sub.add_parser("random", parents=[common], help="seeded sweep over (n, m, p, q)")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--count", type=int, default=100, help="instances per tuple")
    p.add_argument("--constraint", choices=["all", "classical", "mixed"], default="all")
    p.add_argument("--steps", type=int, default=8)
    p.add_argument("--checks", default=",".join(ALL_CHECKS), help="comma-separated subset of checks")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("fibration", parents=[common], help="check a fibration model, or random ones")
    p.add_argument("model", nargs="?", help="FibrationModel JSON; omit to sample with --n/--m/--count")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--steps", type=int, default=8)

    p = sub.add_parser("search", parents=[common], help="observational counterexample search")
    p.add_argument("mode", choices=["arbitrary-omega", "basis-intersection"])
    p.add_argument("--count", "--budget", dest="budget", type=int, default=50, help="number of trials")
    p.add_argument("--product-only", action="store_true", help="arbitrary-omega: single product, no perturbation")

    p = sub.add_parser("restrict", parents=[common], help="restriction identity and positivity on a hyperplane")
    p.add_argument("instance")
    p.add_argument("--hyperplane", default=None, help="Hyperplane JSON; sampled from --seed when omitted")
    p.add_argument("--plain", action="store_true", help="allow m = n (identity and lower positivity only)")
    p.add_argument("--no-validate", action="store_true")

    p = sub.add_parser("deform", parents=[common], help="signature table along the deformation to omega")
    p.add_argument("instance")
    p.add_argument("--steps", type=int, default=32)
    p.add_argument("--no-validate", action="store_true")
    return parser


def _emit(obj, path) -> None:
    text = dump_json(obj, path)
    if path is None:
        sys.stdout.write(text)


def _load_instance(path, validate=True):
    return instance_from_json(load_json(path), validate=validate)


def cmd_check(args) -> int:
    inst = _load_instance(args.instance, not args.no_validate)
    report = check_instance(inst, steps=args.steps, samples=args.samples, seed=args.seed, tol=args.tol)
    _emit(report.to_json(), args.report)
    return EXIT_OK if report.all_pass else EXIT_FAIL


def cmd_random(args) -> int:
    checks = tuple(c for c in args.checks.split(",") if c)
    config = SweepConfig(n_min=args.n_min, n_max=args.n_max, count=args.count, seed=args.seed,
                         constraint=args.constraint, steps=args.steps, checks=checks, tol=args.tol,
                         jobs=args.jobs, output=args.report)
    result = run_sweep(config)
    _emit(result, args.report)
    return EXIT_OK if result["all_pass"] else EXIT_FAIL


def cmd_fibration(args) -> int:
    if args.model is not None:
        model = FibrationModel.from_json(load_json(args.model))
        report = check_instance(model.to_instance(), steps=args.steps, seed=args.seed, tol=args.tol)
        out = report.to_json()
        out["model"] = model.to_json()
        _emit(out, args.report)
        return EXIT_OK if report.all_pass else EXIT_FAIL
    if args.n is None or args.m is None:
        raise HRLabError("give a model file, or both --n and --m")
    if not 1 <= args.m <= args.n:
        raise HRLabError(f"need 1 <= m <= n, got n={args.n} m={args.m}")
    result = run_fibration_sweep([(args.n, args.m)], args.count, args.seed, args.steps, args.tol)
    _emit(result, args.report)
    return EXIT_OK if result["all_pass"] else EXIT_FAIL


def cmd_search(args) -> int:
    result = search(args.mode, args.budget, args.seed, product_only=args.product_only, tol=args.tol)
    _emit(result, args.report)
    return EXIT_OK


def cmd_restrict(args) -> int:
    inst = _load_instance(args.instance, not args.no_validate)
    if inst.n < 2:
        raise HRLabError("restriction needs n >= 2")
    warnings = []
    if inst.m == inst.n:
        if not args.plain:
            print("error: m = n leaves no room for the degeneracy locus; pass --plain for the "
                  "restriction identity alone", file=sys.stderr)
            return EXIT_INPUT
        warnings.append("m = n: degeneracy-locus positivity skipped")
    if args.hyperplane is not None:
        h = hyperplane_from_json(load_json(args.hyperplane))
    else:
        h = Hyperplane.random(inst.n, np.random.default_rng(args.seed))
    report = restriction_report(inst, h, tol=args.tol)
    report["all_pass"] = report["verdict"]
    report["warnings"] = warnings
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    _emit(report, args.report)
    return EXIT_OK if report["verdict"] else EXIT_FAIL


def cmd_deform(args) -> int:
    inst = _load_instance(args.instance, not args.no_validate)
    report = homotopy_sweep(inst, args.steps, args.tol)
    print(report.table())
    if args.report is not None:
        out = report.to_json()
        out["all_pass"] = out["verdict"]
        dump_json(out, args.report)
    return EXIT_OK if report.verdict.holds else EXIT_FAIL


COMMANDS = {"check": cmd_check, "random": cmd_random, "fibration": cmd_fibration, "search": cmd_search,
            "restrict": cmd_restrict, "deform": cmd_deform}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.tol is not None:
        if not args.tol > 0:
            print("error: --tol must be positive", file=sys.stderr)
            return EXIT_INPUT
        # worker processes read the threshold from the environment too
        os.environ["HRLAB_TOL"] = repr(args.tol)
    try:
        return COMMANDS[args.command](args)
    except (HRLabError, ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
