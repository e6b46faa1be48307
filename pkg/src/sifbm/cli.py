"""Command-line front-end.

Subcommands: gram, pd-scan, sample, project, verify {projection |
stationarity | self-similarity | outer-continuity | circle |
characterization}, and counterexample.  Exit codes: 0 success (and all
checks passed), 1 computational or verdict failure, 2 usage or parse
error.  Set SIFBM_THREADS to allow multi-threaded scans and
SIFBM_BACKEND to pin the kernel backend.
"""

import argparse
import json
import math
import sys

import numpy as np

from . import fileio
from .backend import BACKEND_NAME
from .covariance import gram
from .errors import SifbmError
from .flows import flow_through, project_points, theta_inverse
from .indexing import IndexingCollection, Rectangle, rectangles
from .sampling import GENERATOR_NAME, empirical_gram, sample_field
from .spectra import critical_h_scan, eigenvalues_symmetric, is_psd
from .validation import (
    characterization_crosscheck,
    check_outer_continuity,
    check_projection_is_fbm,
    check_self_similarity,
    check_stationarity,
    circle_triple_compare,
    outer_continuity_chain,
    random_chain,
    random_hurst,
    random_self_similarity_instance,
    random_stationarity_instance,
)

COUNTEREXAMPLE_POINTS = (
    Rectangle((1.0, 1.0)),
    Rectangle((2.0, 1.0)),
    Rectangle((1.0, 2.0)),
    Rectangle((2.0, 2.0)),
)

# closed forms of the Gram entries over the four rectangles, as
# functions of H
SYMBOLIC_ENTRIES = (
    ("1", "2^{2H-1}", "2^{2H-1}", "(1+2^{4H}-3^{2H})/2"),
    ("2^{2H-1}", "2^{2H}", "2^{2H-1}", "2^{4H-1}"),
    ("2^{2H-1}", "2^{2H-1}", "2^{2H}", "2^{4H-1}"),
    ("(1+2^{4H}-3^{2H})/2", "2^{4H-1}", "2^{4H-1}", "4^{2H}"),
)


def _check_h(value):
    h = float(value)
    if not (math.isfinite(h) and 0.0 < h < 1.0):
        raise ValueError(f"--h must lie in (0, 1), got {value!r}")
    return h


def _emit(obj, out_path):
    text = fileio.dump_json(obj)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_gram(args):
    coll = IndexingCollection.from_spec(args.collection)
    h = _check_h(args.h)
    points = fileio.load_points(args.points, coll)
    g = gram(coll, h, points)
    wrote = False
    if args.out_csv:
        with open(args.out_csv, "w", encoding="utf-8") as fh:
            fh.write(fileio.gram_to_csv(g))
        wrote = True
    if args.out_json:
        with open(args.out_json, "w", encoding="utf-8") as fh:
            fh.write(fileio.dump_json(fileio.gram_to_obj(g)))
        wrote = True
    if not wrote:
        sys.stdout.write(fileio.dump_json(fileio.gram_to_obj(g)))
    return 0


def cmd_pd_scan(args):
    coll = IndexingCollection.from_spec(args.collection)
    points = fileio.load_points(args.points, coll)
    grid = fileio.parse_grid(args.grid)
    report = critical_h_scan(coll, points, grid, tol=args.tol)
    obj = {
        "points_file": args.points,
        "grid": [{"h": h, "min_eig": me} for h, me in report.grid],
        "bracket": None if report.bracket is None else
        {"h_low": report.bracket[0], "h_high": report.bracket[1]},
        "refined_critical_h": report.refined_critical_h,
    }
    _emit(obj, args.out)
    return 0


def cmd_sample(args):
    coll = IndexingCollection.from_spec(args.collection)
    h = _check_h(args.h)
    points = fileio.load_points(args.points, coll)
    if args.paths < 1:
        raise ValueError(f"--paths must be >= 1, got {args.paths}")
    field = sample_field(coll, h, points, args.seed, args.paths)
    analytic = gram(coll, h, points)
    summary = {
        "collection": coll.spec_string(),
        "h": h,
        "seed": field.seed,
        "n_paths": field.n_paths,
        "generator": GENERATOR_NAME,
        "backend": BACKEND_NAME,
        "jitter": field.jitter,
        "points": [fileio.point_to_obj(u) for u in field.points],
        "analytic_gram": [[analytic.entries[i, j] for j in range(analytic.n)]
                          for i in range(analytic.n)],
    }
    if field.n_paths >= 2:
        emp = empirical_gram(field)
        err = float(np.max(np.abs(emp.entries - analytic.entries)))
        summary["empirical_gram"] = [[emp.entries[i, j] for j in range(emp.n)]
                                     for i in range(emp.n)]
        summary["max_abs_error"] = err
    wrote = False
    if args.out_csv:
        with open(args.out_csv, "w", encoding="utf-8") as fh:
            fh.write("# seed=%d generator=%s backend=%s jitter=%.17g\n"
                     % (field.seed, GENERATOR_NAME, BACKEND_NAME, field.jitter))
            for p in range(field.n_paths):
                fh.write(",".join("%.17g" % v for v in field.values[p]) + "\n")
        wrote = True
    if args.out_json:
        with open(args.out_json, "w", encoding="utf-8") as fh:
            fh.write(fileio.dump_json(summary))
        wrote = True
    if not wrote:
        sys.stdout.write(fileio.dump_json(summary))
    return 0


def cmd_project(args):
    flow = fileio.load_flow(args.flow)
    grid = fileio.parse_grid(args.grid)
    times = [theta_inverse(flow, s) for s in grid]
    sets = project_points(flow, grid)
    obj = {
        "collection": flow.coll.spec_string(),
        "grid": grid,
        "times": times,
        "sets": [fileio.point_to_obj(u) for u in sets],
    }
    if args.h is not None:
        h = _check_h(args.h)
        g = gram(flow.coll, h, sets)
        obj["h"] = h
        obj["gram"] = [[g.entries[i, j] for j in range(g.n)]
                       for i in range(g.n)]
    _emit(obj, args.out)
    return 0


def cmd_counterexample(args):
    coll = rectangles(2)
    cases = []
    for h in (0.5, 0.75):
        g = gram(coll, h, COUNTEREXAMPLE_POINTS)
        eig = eigenvalues_symmetric(g)
        verdict = is_psd(g)
        cases.append({
            "h": h,
            "entries": [[g.entries[i, j] for j in range(g.n)]
                        for i in range(g.n)],
            "eigenvalues": [float(v) for v in eig],
            "min_eigenvalue": verdict.min_eigenvalue,
            "tolerance": verdict.tolerance,
            "is_psd": verdict.is_psd,
        })
    obj = {
        "description": ("Gram matrix over four plane rectangles; positive "
                        "semidefinite at H=1/2 but not at H=3/4, so the "
                        "process cannot exist there for large H"),
        "points": [fileio.point_to_obj(u) for u in COUNTEREXAMPLE_POINTS],
        "symbolic_entries": [list(row) for row in SYMBOLIC_ENTRIES],
        "cases": cases,
    }
    _emit(obj, args.out)
    return 0


def _default_projection_grid(flow):
    clocks = [flow.coll.measure(u) for _, u in flow.knots]
    low, high = clocks[0], clocks[-1]
    if high <= low:
        return [low]
    return [low + (high - low) * j / 9.0 for j in range(1, 9)]


def _verify_reports(args):
    what = args.what
    if what == "projection":
        flow = fileio.load_flow(args.flow)
        h = _check_h(args.h)
        grid = (fileio.parse_grid(args.grid) if args.grid
                else _default_projection_grid(flow))
        return [check_projection_is_fbm(flow.coll, h, flow, grid, args.tol)]

    if what == "stationarity" or what == "self-similarity":
        coll = IndexingCollection.from_spec(args.collection)
        rng = np.random.default_rng(args.seed)
        reports = []
        for _ in range(args.instances):
            h = _check_h(args.h) if args.h is not None else random_hurst(coll, rng)
            if what == "stationarity":
                v, us, asets = random_stationarity_instance(coll, rng)
                reports.append(check_stationarity(coll, h, v, us, asets, args.tol))
            else:
                a, pts = random_self_similarity_instance(coll, rng)
                reports.append(check_self_similarity(coll, h, a, pts, args.tol))
        return reports

    if what == "outer-continuity":
        coll = IndexingCollection.from_spec(args.collection)
        h = _check_h(args.h)
        sets = outer_continuity_chain(coll, args.n)
        return [check_outer_continuity(coll, h, sets, args.tol_curve)]

    if what == "circle":
        h = _check_h(args.h)
        rng = np.random.default_rng(args.seed)
        pairs = [(float(rng.uniform(0.0, math.pi)),
                  float(rng.uniform(0.0, math.pi)))
                 for _ in range(args.pairs)]
        return [circle_triple_compare(h, pairs, args.tol)]

    if what == "characterization":
        coll = IndexingCollection.from_spec(args.collection)
        h = _check_h(args.h)
        rng = np.random.default_rng(args.seed)
        points = random_chain(coll, rng, 6)
        flows = [flow_through(coll, points[:4]), flow_through(coll, points)]
        return [characterization_crosscheck(coll, h, points, flows, args.tol)]

    raise ValueError(f"unknown verify target {what!r}")


def cmd_verify(args):
    reports = _verify_reports(args)
    all_passed = all(r.passed for r in reports)
    obj = {
        "command": f"verify {args.what}",
        "all_passed": all_passed,
        "reports": [fileio.report_to_obj(r) for r in reports],
    }
    if getattr(args, "seed", None) is not None:
        obj["seed"] = args.seed
    _emit(obj, args.out)
    return 0 if all_passed else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sifbm",
        description="Covariance geometry, spectra, flows, sampling, and "
                    "verification checks for the set-indexed fractional "
                    "Brownian motion.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gram", help="Gram matrix of the kernel over points")
    p.add_argument("--collection", required=True)
    p.add_argument("--h", required=True)
    p.add_argument("--points", required=True,
                   help="JSON file path or inline {..} points")
    p.add_argument("--out-csv")
    p.add_argument("--out-json")
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("pd-scan",
                       help="minimum-eigenvalue scan over a Hurst grid")
    p.add_argument("--collection", required=True)
    p.add_argument("--points", required=True)
    p.add_argument("--grid", default="0.05:0.95:0.05")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_pd_scan)

    p = sub.add_parser("sample", help="seeded Gaussian sampling at points")
    p.add_argument("--collection", required=True)
    p.add_argument("--h", required=True)
    p.add_argument("--points", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--paths", type=int, default=10000)
    p.add_argument("--out-csv")
    p.add_argument("--out-json")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("project",
                       help="standard projection of a flow at clock values")
    p.add_argument("--flow", required=True, help="flow JSON file")
    p.add_argument("--grid", required=True)
    p.add_argument("--h", default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("verify", help="closed-form property checks")
    vsub = p.add_subparsers(dest="what", required=True)

    v = vsub.add_parser("projection")
    v.add_argument("--flow", required=True)
    v.add_argument("--h", required=True)
    v.add_argument("--grid", default=None)
    v.add_argument("--tol", type=float, default=1e-10)
    v.add_argument("--out")

    v = vsub.add_parser("stationarity")
    v.add_argument("--collection", required=True)
    v.add_argument("--h", default=None)
    v.add_argument("--instances", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", type=float, default=1e-10)
    v.add_argument("--out")

    v = vsub.add_parser("self-similarity")
    v.add_argument("--collection", required=True)
    v.add_argument("--h", default=None)
    v.add_argument("--instances", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", type=float, default=1e-10)
    v.add_argument("--out")

    v = vsub.add_parser("outer-continuity")
    v.add_argument("--collection", required=True)
    v.add_argument("--h", required=True)
    # (1/n)^{2H} must reach tol-curve: n=2500 covers every H >= 0.3
    v.add_argument("--n", type=int, default=2500)
    v.add_argument("--tol-curve", type=float, default=1e-2)
    v.add_argument("--out")

    v = vsub.add_parser("circle")
    v.add_argument("--h", required=True)
    v.add_argument("--pairs", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", type=float, default=1e-12)
    v.add_argument("--out")

    v = vsub.add_parser("characterization")
    v.add_argument("--collection", default="rect:2")
    v.add_argument("--h", required=True)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", type=float, default=1e-10)
    v.add_argument("--out")

    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("counterexample",
                       help="the four-rectangle positive-definiteness failure")
    p.add_argument("--out")
    p.set_defaults(func=cmd_counterexample)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code in (0, None):
            return 0
        return 2
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SifbmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
