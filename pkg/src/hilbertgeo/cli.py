"""Command-line surface: distances, profiles, reports, counterexample, plots.

Exit codes: 0 success, 2 input validation failure, 3 numeric failure,
4 I/O failure.  Output files are written atomically (write then rename)
and all numeric text uses 17 significant digits, so identical inputs give
byte-identical outputs.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .asymptotic import (
    ConvexityReport,
    DistanceProfile,
    GeodesicPair,
    convexity_report,
    distance_profile,
    synchronize,
)
from .counterexample import (
    CounterexampleParams,
    build_counterexample_domain,
    verify_nonconvexity,
)
from .domain_io import _atomic_write, load_domain, save_domain
from .domains import BoundaryPoint
from .errors import GeometryError, SolverError
from .metric import GeodesicLine, geodesic_through, hilbert_distance
from .projective import Point

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3
EXIT_IO = 4


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _parse_point(text: str) -> Point:
    try:
        xs, ys = text.split(",")
        p = Point(float(xs), float(ys))
    except (ValueError, TypeError) as ex:
        raise GeometryError(f"bad point {text!r}: expected x,y") from ex
    return p


def _parse_point_pair(text: str) -> tuple[Point, Point]:
    try:
        a, b = text.split(":")
    except ValueError as ex:
        raise GeometryError(f"bad geodesic {text!r}: expected x1,y1:x2,y2") from ex
    return _parse_point(a), _parse_point(b)


def emit_profile_csv(profile: DistanceProfile) -> str:
    sd = profile.second_differences()
    lines = ["t,D,second_difference"]
    n = len(profile.ts)
    for i in range(n):
        mid = _fmt(float(sd[i - 1])) if 0 < i < n - 1 else ""
        lines.append(f"{_fmt(float(profile.ts[i]))},{_fmt(float(profile.values[i]))},{mid}")
    return "\n".join(lines) + "\n"


def parse_profile_csv(text: str) -> DistanceProfile:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].split(",")[:2] != ["t", "D"]:
        raise GeometryError("profile CSV must start with header t,D,second_difference")
    ts, vals = [], []
    for ln in lines[1:]:
        parts = ln.split(",")
        ts.append(float(parts[0]))
        vals.append(float(parts[1]))
    if len(ts) < 3:
        raise GeometryError("profile CSV needs at least 3 rows")
    steps = [ts[i + 1] - ts[i] for i in range(len(ts) - 1)]
    if max(steps) - min(steps) > 1e-12:
        raise GeometryError("profile grid is not uniform")
    return DistanceProfile(np.array(ts), np.array(vals))


def emit_svg(profile: DistanceProfile, report: ConvexityReport) -> str:
    """Deterministic 800x600 plot: one polyline, negative windows shaded."""
    width, height = 800.0, 600.0
    ml, mr, mt, mb = 60.0, 20.0, 20.0, 40.0
    t0, t1 = float(profile.ts[0]), float(profile.ts[-1])
    v0, v1 = float(profile.values.min()), float(profile.values.max())
    if v1 - v0 < 1e-300:
        v0, v1 = v0 - 0.5, v1 + 0.5

    def sx(t):
        return ml + (t - t0) / (t1 - t0) * (width - ml - mr)

    def sy(v):
        return height - mb - (v - v0) / (v1 - v0) * (height - mt - mb)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {int(width)} {int(height)}">',
        f'<rect x="0" y="0" width="{int(width)}" height="{int(height)}" fill="white"/>',
    ]
    for (wa, wb, _m) in report.negative_windows:
        xa, xb = sx(wa), sx(wb)
        parts.append(
            f'<rect x="{_fmt(xa)}" y="{_fmt(mt)}" width="{_fmt(max(xb - xa, 1.0))}" '
            f'height="{_fmt(height - mt - mb)}" fill="#f4c7c3"/>')
    pts = " ".join(f"{_fmt(sx(float(t)))},{_fmt(sy(float(v)))}"
                   for t, v in zip(profile.ts, profile.values))
    parts.append(f'<polyline fill="none" stroke="#1a53a1" stroke-width="1.5" points="{pts}"/>')
    parts.append(f'<line x1="{_fmt(ml)}" y1="{_fmt(height - mb)}" x2="{_fmt(width - mr)}" '
                 f'y2="{_fmt(height - mb)}" stroke="black" stroke-width="1"/>')
    parts.append(f'<line x1="{_fmt(ml)}" y1="{_fmt(mt)}" x2="{_fmt(ml)}" '
                 f'y2="{_fmt(height - mb)}" stroke="black" stroke-width="1"/>')
    parts.append(f'<text x="{_fmt(width / 2)}" y="{_fmt(height - 10.0)}" font-size="14" '
                 f'text-anchor="middle">t</text>')
    parts.append(f'<text x="15" y="{_fmt(height / 2)}" font-size="14" '
                 f'text-anchor="middle" transform="rotate(-90 15 {_fmt(height / 2)})">D(t)</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _cmd_dist(args) -> int:
    domain = load_domain(args.domain)
    p = _parse_point(args.p)
    q = _parse_point(args.q)
    print(_fmt(hilbert_distance(domain, p, q)))
    return EXIT_OK


def _cmd_profile(args) -> int:
    domain = load_domain(args.domain)
    fp, fq = _parse_point_pair(args.f)
    gp, gq = _parse_point_pair(args.g)
    f = geodesic_through(domain, fp, fq)
    g = geodesic_through(domain, gp, gq)
    if args.sync:
        pair = synchronize(domain, f, g)
    else:
        pair = GeodesicPair(domain, f, g)
    profile = distance_profile(domain, pair, args.t0, args.t1, args.n)
    _atomic_write(args.out, emit_profile_csv(profile))
    return EXIT_OK


def _cmd_report(args) -> int:
    with open(args.profile, "r", encoding="utf-8") as fh:
        profile = parse_profile_csv(fh.read())
    rep = convexity_report(profile, args.tol)
    print(json.dumps(rep.to_dict(), sort_keys=True))
    return EXIT_OK


def _cmd_counterexample(args) -> int:
    params = CounterexampleParams(x0=args.x0, levels=args.levels)
    domain = build_counterexample_domain(params)
    save_domain(domain, args.out)
    if args.profile:
        xi = BoundaryPoint(Point(0.0, 0.0), 0, 0.0)
        f = GeodesicLine(domain, BoundaryPoint(Point(1.0, 1.0), 0, 1.0), xi, 0.5)
        g = GeodesicLine(domain, BoundaryPoint(Point(-1.0, 1.0), 0, -1.0), xi, 0.5)
        pair = GeodesicPair(domain, f, g)
        profile = distance_profile(domain, pair, 0.0, 25.0, 501)
        _atomic_write(args.profile, emit_profile_csv(profile))
    if args.verify:
        rep = verify_nonconvexity(domain, params)
        print(json.dumps(rep.to_dict(), sort_keys=True))
    return EXIT_OK


def _cmd_plot(args) -> int:
    with open(args.profile, "r", encoding="utf-8") as fh:
        profile = parse_profile_csv(fh.read())
    rep = convexity_report(profile, args.tol)
    _atomic_write(args.out, emit_svg(profile, rep))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hilbertgeo",
                                 description="Hilbert metric toolkit for planar convex domains")
    sub = ap.add_subparsers(dest="command", required=True)

    d = sub.add_parser("dist", help="Hilbert distance between two interior points")
    d.add_argument("--domain", required=True)
    d.add_argument("--p", required=True)
    d.add_argument("--q", required=True)
    d.set_defaults(fn=_cmd_dist)

    pr = sub.add_parser("profile", help="sample t -> h(f(t), g(t)) to CSV")
    pr.add_argument("--domain", required=True)
    pr.add_argument("--f", required=True,
                    help="geodesic through two points x1,y1:x2,y2 "
                         "(use --f=... when coordinates are negative)")
    pr.add_argument("--g", required=True)
    pr.add_argument("--sync", action="store_true",
                    help="apply the parallel-line reparametrization of f")
    pr.add_argument("--t0", type=float, default=0.0)
    pr.add_argument("--t1", type=float, default=10.0)
    pr.add_argument("--n", type=int, default=201)
    pr.add_argument("--out", required=True)
    pr.set_defaults(fn=_cmd_profile)

    rp = sub.add_parser("report", help="convexity report for a profile CSV")
    rp.add_argument("--profile", required=True)
    rp.add_argument("--tol", type=float, default=1e-9)
    rp.set_defaults(fn=_cmd_report)

    ce = sub.add_parser("counterexample", help="build the zero-curvature counterexample domain")
    ce.add_argument("--x0", type=float, default=0.25)
    ce.add_argument("--levels", type=int, default=3)
    ce.add_argument("--out", required=True)
    ce.add_argument("--profile", default=None,
                    help="also write the diagonal-pair profile CSV here")
    ce.add_argument("--verify", action="store_true",
                    help="run the high-precision non-convexity certificate")
    ce.set_defaults(fn=_cmd_counterexample)

    pl = sub.add_parser("plot", help="SVG plot of a profile CSV")
    pl.add_argument("--profile", required=True)
    pl.add_argument("--tol", type=float, default=1e-9)
    pl.add_argument("--out", required=True)
    pl.set_defaults(fn=_cmd_plot)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as ex:
        return EXIT_INPUT if ex.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except SolverError as ex:
        print(f"numeric failure: {ex}", file=sys.stderr)
        return EXIT_NUMERIC
    except (GeometryError, ValueError, KeyError, IndexError) as ex:
        print(f"invalid input: {ex}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as ex:
        print(f"i/o failure: {ex}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
