"""Command-line interface: generate, validate, stats, render.

Exit codes: 0 success, 1 validation failure, 2 usage or format error,
3 radius-schedule validation failure.
"""

import argparse
import sys

import numpy as np

from regtri import analysis, io, validate
from regtri.euclidean import EuclideanParams, generate_euclidean
from regtri.hyperbolic import (
    HyperbolicParams,
    RadiusSchedule,
    ScheduleError,
    generate_hyperbolic,
    inequality_margin,
    validate_schedule,
)
from regtri.mesh import EdgeType, Geometry
from regtri.sphere import generate_sphere

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SCHEDULE = 0, 1, 2, 3
CHECKS = ("degree", "crossing", "euler", "disk", "closed")


class UsageError(Exception):
    pass


def _hyperbolic(args):
    if args.k is not None and args.k != 6:
        raise UsageError(f"the hyperbolic construction is 6-regular; got --k {args.k}")
    if args.schedule is not None:
        raise UsageError("--schedule applies to the euclidean model only")
    if args.layers is None:
        raise UsageError("--layers is required for the hyperbolic model")
    alpha = 0.45 if args.alpha is None else args.alpha
    if not 0 < alpha < 0.5:
        raise UsageError(f"alpha must lie in (0, 0.5), got {alpha}")
    try:
        sched = RadiusSchedule.pure(alpha) if args.bootstrap == "none" else RadiusSchedule.default(alpha)
    except ScheduleError as e:
        raise UsageError(str(e)) from None
    res = validate_schedule(sched, args.layers, fit=False)
    if not res.ok:
        raise ScheduleError(
            f"radius schedule fails the layer inequality at n = {res.failures[:10]} "
            f"(first passing layer: {res.first_pass})"
        )
    return generate_hyperbolic(HyperbolicParams(sched, args.layers), check=False)


def _euclidean(args):
    if args.alpha is not None:
        raise UsageError("--alpha applies to the hyperbolic model only")
    if args.k is None or args.layers is None:
        raise UsageError("--k and --layers are required for the euclidean model")
    try:
        p = EuclideanParams(args.k, args.layers, args.schedule or "unit")
        return generate_euclidean(p)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _sphere(args):
    if args.alpha is not None or args.schedule is not None or args.layers is not None:
        raise UsageError("the sphere model takes only --k")
    if args.k is None:
        raise UsageError("--k is required for the sphere model")
    try:
        return generate_sphere(args.k)
    except ValueError as e:
        raise UsageError(str(e)) from None


def cmd_generate(args):
    builder = {"hyperbolic": _hyperbolic, "euclidean": _euclidean, "sphere": _sphere}[args.model]
    if args.layers is not None and args.layers < 1:
        raise UsageError("--layers must be positive")
    m = builder(args)
    io.save(m, args.out)
    longest = float(analysis.edge_lengths(m).max())
    print(f"V={m.n_vertices} E={m.n_edges} F={m.n_faces} max_edge={longest:.17g}")
    return EXIT_OK


def _load(path):
    try:
        return io.load(path)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}") from None
    except io.MeshFormatError as e:
        raise UsageError(f"{path}: {e}") from None


def _default_checks(m):
    if m.geometry.planar:
        return ["degree", "crossing", "euler", "disk"]
    return ["degree", "euler", "closed"]


def run_checks(m, checks):
    """Reports for the named checks, in order; a check that cannot apply fails with an error note."""
    k = int(m.params.get("k", 6))
    reports = []
    for name in checks:
        try:
            if name == "degree":
                r = validate.check_regular(m, k)
            elif name == "crossing":
                r = validate.noncrossing_check(m)
            elif name == "euler":
                r = validate.euler_report(m, 1 if m.geometry.planar else 2)
            elif name == "disk":
                r = validate.disk_identity(m)
            else:
                r = validate.closed_surface_identity(m)
        except ValueError as e:
            r = validate.ValidationReport(name, [((), {"error": str(e)})], {})
        reports.append(r)
    return reports


def cmd_validate(args):
    checks = _parse_checks(args.checks)
    m = _load(args.path)
    reports = run_checks(m, checks or _default_checks(m))
    for r in reports:
        print(r.to_json(max_violations=100))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _parse_checks(text):
    if text is None:
        return None
    names = [c.strip() for c in text.split(",") if c.strip()]
    bad = [c for c in names if c not in CHECKS]
    if bad or not names:
        raise UsageError(f"unknown checks {bad}; choose from {', '.join(CHECKS)}")
    return names


def _parse_range(text):
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise UsageError(f"--range must be n_lo:n_hi, got {text!r}") from None
    if not hi > lo >= 1:
        raise UsageError(f"--range needs n_hi > n_lo >= 1, got {lo}:{hi}")
    return lo, hi


def _fit(m, kind, rng):
    layers = int(m.layer.max())
    if kind == "type1":
        series = analysis.max_length_series(m, EdgeType.TYPE1)
        lo, hi = rng or (max(1, layers // 10), layers)
        return analysis.loglog_slope(series, lo, hi)
    if m.geometry is not Geometry.HYPERBOLIC:
        raise UsageError("margin fits need a hyperbolic mesh")
    p = m.params
    sched = RadiusSchedule(p["alpha"], tuple(p.get("bootstrap", ())))
    lo, hi = rng or (max(1, layers // 10), layers)
    n = np.arange(lo, hi + 1)
    lhs, rhs = inequality_margin(sched, n)
    vals = lhs if kind == "margin-lhs" else rhs
    return analysis.loglog_slope(list(zip(n.tolist(), vals.tolist())), lo, hi)


def cmd_stats(args):
    rng = _parse_range(args.range) if args.range else None
    m = _load(args.path)
    stats = analysis.edge_length_stats(m, angles=m.n_faces > 0 and m.geometry is not Geometry.COMBINATORIAL)
    fit = None
    if args.fit:
        try:
            fit = _fit(m, args.fit, rng)
        except ValueError as e:
            raise UsageError(str(e)) from None
    text = analysis.stats_to_csv(stats, fit) if args.format == "csv" else analysis.stats_to_json(stats, fit) + "\n"
    sys.stdout.write(text)
    return EXIT_OK


def cmd_render(args):
    m = _load(args.path)
    try:
        svg = io.render_svg(m, args.disk_model, args.stroke_width)
    except ValueError as e:
        raise UsageError(str(e)) from None
    io.save_svg(svg, args.out)
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(prog="regtri", description="Degree-regular geodesic triangulations.")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="build a mesh and write a MeshFile")
    g.add_argument("--model", required=True, choices=("euclidean", "hyperbolic", "sphere"))
    g.add_argument("--k", type=int)
    g.add_argument("--alpha", type=float)
    g.add_argument("--layers", type=int)
    g.add_argument("--schedule", choices=("unit", "geometric"))
    g.add_argument(
        "--bootstrap",
        choices=("default", "none"),
        default="default",
        help="hyperbolic inner radii: alpha*ln(n+1/2) for n <= 3, or the bare log rule",
    )
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("validate", help="run mesh checks, one JSON line each")
    v.add_argument("path")
    v.add_argument("--checks", help=f"comma list from {','.join(CHECKS)}")
    v.set_defaults(func=cmd_validate)

    s = sub.add_parser("stats", help="per-layer edge lengths and angles")
    s.add_argument("path")
    s.add_argument("--by", choices=("layer",), default="layer")
    s.add_argument("--fit", choices=("type1", "margin-lhs", "margin-rhs"))
    s.add_argument("--range")
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.set_defaults(func=cmd_stats)

    r = sub.add_parser("render", help="draw a mesh as SVG")
    r.add_argument("path")
    r.add_argument("--format", choices=("svg",), default="svg")
    r.add_argument("--disk-model", choices=io.DISK_MODELS, default="klein")
    r.add_argument("--out", required=True)
    r.add_argument("--stroke-width", type=float)
    r.set_defaults(func=cmd_render)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ScheduleError as e:
        print(f"schedule error: {e}", file=sys.stderr)
        return EXIT_SCHEDULE


if __name__ == "__main__":
    sys.exit(main())
