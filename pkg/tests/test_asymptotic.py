import math
import random

import numpy as np
import pytest

from hilbertgeo.asymptotic import (
    GeodesicPair,
    PhiParams,
    closed_form_example,
    convexity_report,
    distance_profile,
    example1_profile,
    example2_profile,
    limit_estimate,
    logistic_gap,
    phi_second,
    phi_value,
    synchronize,
    thm1a_case1_profile,
    vertex_lower_bound_check,
    wedge_pencil_distance,
)
from hilbertgeo.domains import BoundaryPoint, EllipseDomain, PolygonDomain, cubic_cap_domain
from hilbertgeo.errors import GeometryError, NotAsymptoticError, SupportLineError
from hilbertgeo.metric import GeodesicLine, geodesic_through, geodesic_toward, hilbert_distance
from hilbertgeo.projective import Point, apply_map, map_from_correspondence

SQ3 = math.sqrt(3.0)
TRAPEZOID = [Point(2, 0), Point(3, 1), Point(-2, 1), Point(-1, 0)]

CIRCLE = EllipseDomain(0.0, 1.0, 1.0, 1.0)
XI_ORIGIN = BoundaryPoint(Point(0.0, 0.0), 0, 0.75)


def circle_ray(phi_deg: float) -> BoundaryPoint:
    phi = math.radians(phi_deg)
    return BoundaryPoint(Point(math.sin(phi), 1.0 - math.cos(phi)), 0, math.nan)


def symmetric_circle_pair(phi_deg: float, u0: float = 0.5):
    f = GeodesicLine(CIRCLE, circle_ray(phi_deg), XI_ORIGIN, u0)
    g = GeodesicLine(CIRCLE, circle_ray(-phi_deg), XI_ORIGIN, u0)
    return f, g


def example1_pair():
    trap = PolygonDomain(TRAPEZOID)
    f = geodesic_through(trap, Point(1, 0.5), Point(1, 0.25))
    g = geodesic_through(trap, Point(0, 0.5), Point(0, 0.25))
    return trap, GeodesicPair(trap, f, g)


def example2_pair():
    trap = PolygonDomain(TRAPEZOID)
    f = geodesic_through(trap, Point(0.5, 0.5), Point(0.25, 0.25))
    g = geodesic_through(trap, Point(0.5, 0.5), Point(0.75, 0.25))
    return trap, GeodesicPair(trap, f, g)


# -- synchronization ---------------------------------------------------------


def test_synchronize_parallel_case_uses_no_map():
    f, g = symmetric_circle_pair(120.0)
    pair = synchronize(CIRCLE, f, g)
    assert pair.sync.map is None
    prof = distance_profile(CIRCLE, pair, 0.0, 10.0, 101)
    assert (np.diff(prof.values) < 0).all()
    assert prof.values[-1] < 5e-2


def test_synchronize_rejects_non_asymptotic():
    trap, pair = example1_pair()
    with pytest.raises(NotAsymptoticError):
        synchronize(trap, pair.f, pair.g)


def test_synchronize_requires_support_line_at_vertex():
    sq = PolygonDomain([Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)])
    xi = BoundaryPoint(Point(0.0, 0.0), 0, 0.0)
    f = geodesic_toward(sq, Point(0.5, 0.25), xi)
    g = geodesic_toward(sq, Point(0.25, 0.5), xi)
    with pytest.raises(SupportLineError):
        synchronize(sq, f, g)
    # supplying a support line makes the construction go through
    from hilbertgeo.projective import HomLine
    pair = synchronize(sq, f, g, support_line=HomLine(1.0, 1.0, 0.0))
    prof = distance_profile(sq, pair, 0.0, 8.0, 81)
    assert (prof.values > 0).all()


def test_synchronize_nonparallel_composes_projective_map():
    f = GeodesicLine(CIRCLE, circle_ray(100.0), XI_ORIGIN, 0.5)
    g = GeodesicLine(CIRCLE, circle_ray(-130.0), XI_ORIGIN, 0.4)
    pair = synchronize(CIRCLE, f, g)
    assert pair.sync.map is not None
    # In the mapped frame the pair rides lines parallel to the mapped L.
    m = pair.sync.map
    for t in (0.4, 1.7, 4.0):
        fp = apply_map(m, pair.f_at(t))
        gp = apply_map(m, pair.g_at(t))
        dx, dy = gp.x - fp.x, gp.y - fp.y
        ld = pair.sync.l_dir
        assert abs(dx * ld[1] - dy * ld[0]) / math.hypot(dx, dy) < 1e-9
    prof = distance_profile(CIRCLE, pair, 0.0, 12.0, 121)
    assert prof.values[-1] < 1e-2
    assert (np.diff(prof.values[40:]) < 0).all()


def test_synchronized_pair_keeps_arc_length():
    f = GeodesicLine(CIRCLE, circle_ray(95.0), XI_ORIGIN, 0.35)
    g = GeodesicLine(CIRCLE, circle_ray(-150.0), XI_ORIGIN, 0.6)
    pair = synchronize(CIRCLE, f, g)  # the internal check runs at t in {1,3,7}
    g0 = pair.sync_gap_fraction(0.0)
    for t in (0.5, 2.0, 5.0):
        gt = pair.sync_gap_fraction(t)
        h = abs(math.log((g0 * (1.0 - gt)) / (gt * (1.0 - g0))))
        assert h == pytest.approx(t, abs=1e-9)


def test_equilateral_normalization_frame():
    sq = PolygonDomain([Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)])
    xi = BoundaryPoint(Point(0.7, 0.0), 0, 0.7)
    f = geodesic_toward(sq, Point(0.5, 0.5), xi)
    g = geodesic_toward(sq, Point(0.3, 0.4), xi)
    pair = GeodesicPair(sq, f, g)
    src = [f.a.point, g.a.point, pair.f_at(0.0), pair.g_at(0.0)]
    dst = [Point(0.5, SQ3 / 2), Point(-0.5, SQ3 / 2), Point(0.25, SQ3 / 4), Point(-0.25, SQ3 / 4)]
    m = map_from_correspondence(src, dst)
    xi_img = apply_map(m, xi.point)
    assert math.hypot(xi_img.x, xi_img.y) < 1e-10
    for t in (0.5, 2.0):
        e = logistic_gap(t)
        fi = apply_map(m, pair.f_at(t))
        gi = apply_map(m, pair.g_at(t))
        assert fi.x == pytest.approx(e * 0.5, abs=1e-12)
        assert fi.y == pytest.approx(e * SQ3 / 2, abs=1e-12)
        assert gi.y == pytest.approx(e * SQ3 / 2, abs=1e-12)  # height sqrt(3)/2 E(t)


def test_pair_rejects_shared_chord():
    cub = cubic_cap_domain(1.0)
    f = geodesic_through(cub, Point(0.5, 0.5), Point(0.25, 0.25))
    g = geodesic_through(cub, Point(0.4, 0.4), Point(0.2, 0.2))
    with pytest.raises(GeometryError):
        GeodesicPair(cub, f, g)


# -- profiles and closed forms -------------------------------------------------


def test_example1_profile_matches_closed_form():
    trap, pair = example1_pair()
    prof = distance_profile(trap, pair, 0.0, 10.0, 201)
    for t, v in zip(prof.ts, prof.values):
        assert abs(v - example1_profile(float(t))) < 1e-9


def test_example2_profile_matches_closed_form():
    trap, pair = example2_pair()
    prof = distance_profile(trap, pair, 0.0, 10.0, 201)
    for t, v in zip(prof.ts, prof.values):
        assert abs(v - example2_profile(float(t))) < 1e-9


def test_closed_form_values():
    assert example2_profile(0.0) == pytest.approx(0.0, abs=1e-15)
    assert example2_profile(50.0) == pytest.approx(2 * math.log(2), abs=1e-12)
    assert example1_profile(0.0) == pytest.approx(2 * math.log(5 / 3), abs=1e-15)
    assert closed_form_example("example1", 0.0) == example1_profile(0.0)
    assert closed_form_example("thm1a_case1", 1.0, alpha=1.0, beta=0.5, alpha_prime=1.0) == \
        thm1a_case1_profile(1.0, 1.0, 0.5, 1.0)
    with pytest.raises(GeometryError):
        thm1a_case1_profile(1.0, 1.0, 0.5, 0.5)  # alpha' below sqrt(3)/3
    with pytest.raises(GeometryError):
        thm1a_case1_profile(1.0, 1.0, -0.1, 1.0)


def case1_polygon(alpha, beta, alpha_p, y_top=0.5):
    ystar = -beta / (alpha + alpha_p)
    vbot = Point(alpha_p * beta / (alpha + alpha_p), ystar)
    ztop = Point(alpha * y_top + beta, y_top)
    return PolygonDomain([vbot, ztop, Point(0.5, SQ3 / 2), Point(-0.5, SQ3 / 2),
                          Point(-alpha_p * y_top, y_top)])


CASE1_PARAMS = [(1.0, 0.5, 1.0), (0.6, 0.15, 2.0), (2.0, 0.8, 0.65),
                (0.3, 0.4, 0.7), (-0.2, 0.8, 1.5)]


def test_thm1a_case1_oracle_matches_sampled_polygons():
    xi = BoundaryPoint(Point(0.0, 0.0), 4, 0.5)
    for (a, b, ap) in CASE1_PARAMS:
        dom = case1_polygon(a, b, ap)
        assert dom.validate() == []
        f = GeodesicLine(dom, BoundaryPoint(Point(0.5, SQ3 / 2), -1, math.nan), xi, 0.5)
        g = GeodesicLine(dom, BoundaryPoint(Point(-0.5, SQ3 / 2), -1, math.nan), xi, 0.5)
        pair = GeodesicPair(dom, f, g)
        prof = distance_profile(dom, pair, 0.0, 10.0, 101)
        for t, v in zip(prof.ts, prof.values):
            assert abs(v - thm1a_case1_profile(float(t), a, b, ap)) < 1e-9


# -- convexity reports -----------------------------------------------------------


def test_convexity_report_affine_profile():
    from hilbertgeo.asymptotic import DistanceProfile
    ts = np.array([0.1 * i for i in range(30)])
    prof = DistanceProfile(ts, 2.0 + 0.1 * ts)
    rep = convexity_report(prof, 1e-9)
    assert rep.t_certified == float(ts[0])
    assert abs(rep.min_second_difference) < 1e-9
    assert rep.negative_windows == []


def test_convexity_report_example1_tail_negative():
    trap, pair = example1_pair()
    prof = distance_profile(trap, pair, 1.0, 10.0, 181)
    rep = convexity_report(prof, 1e-9)
    assert rep.t_certified is None
    assert len(rep.negative_windows) >= 1
    sd = prof.second_differences()
    late = sd[np.asarray(prof.ts[1:-1]) >= 2.0]
    assert (late < 0).all()


def test_convexity_report_needs_three_points():
    from hilbertgeo.asymptotic import DistanceProfile
    with pytest.raises(GeometryError):
        distance_profile(CIRCLE, GeodesicPair(CIRCLE, *symmetric_circle_pair(90.0)), 0.0, 1.0, 2)


def test_random_polygon_pairs_certify_quickly():
    rng = random.Random(20250810)
    for _ in range(5):
        k = rng.randint(5, 10)
        angs = sorted(rng.uniform(0, 2 * math.pi) for _ in range(k))
        if any(b - a < 0.15 for a, b in zip(angs, angs[1:])) or (2 * math.pi - angs[-1] + angs[0]) < 0.15:
            continue
        dom = PolygonDomain([Point(math.cos(a), math.sin(a)) for a in angs])
        if dom.validate():
            continue
        ei = rng.randrange(k)
        th = rng.uniform(0.3, 0.7)
        a, b = dom.vertices[ei], dom.vertices[(ei + 1) % k]
        xi = BoundaryPoint(Point(a.x + th * (b.x - a.x), a.y + th * (b.y - a.y)), ei, th)
        c = Point(sum(v.x for v in dom.vertices) / k, sum(v.y for v in dom.vertices) / k)
        pts = []
        while len(pts) < 2:
            cand = Point(c.x + rng.uniform(-0.2, 0.2), c.y + rng.uniform(-0.2, 0.2))
            if dom.contains(cand):
                cr = (cand.x - xi.point.x) * (c.y - xi.point.y) - (cand.y - xi.point.y) * (c.x - xi.point.x)
                if not pts or abs(cr) > 0.02:
                    pts.append(cand)
        pair = GeodesicPair(dom, geodesic_toward(dom, pts[0], xi), geodesic_toward(dom, pts[1], xi))
        rep = convexity_report(distance_profile(dom, pair, 0.0, 25.0, 501), 1e-9)
        assert rep.t_certified is not None and rep.t_certified <= 15.0


def test_cubic_domain_smooth_point_certifies():
    cub = cubic_cap_domain(1.0)
    xi = BoundaryPoint(Point(0.5, 0.125), 1, 0.5)  # curvature 1.536 there
    f = geodesic_toward(cub, Point(0.2, 0.5), xi)
    g = geodesic_toward(cub, Point(-0.3, 0.62), xi)
    pair = GeodesicPair(cub, f, g)
    rep = convexity_report(distance_profile(cub, pair, 0.0, 25.0, 501), 1e-9)
    assert rep.t_certified is not None


def test_certified_second_differences_stable_under_refinement():
    trap = PolygonDomain(TRAPEZOID)
    xi = BoundaryPoint(Point(0.5, 0.0), 3, 0.5)
    pair = GeodesicPair(trap, geodesic_toward(trap, Point(0.4, 0.45), xi),
                        geodesic_toward(trap, Point(0.7, 0.3), xi))
    coarse = distance_profile(trap, pair, 0.0, 25.0, 501)
    rep = convexity_report(coarse, 1e-9)
    assert rep.t_certified is not None
    fine = distance_profile(trap, pair, 0.0, 25.0, 1001)
    sd_fine = fine.second_differences()
    beyond = np.asarray(fine.ts[1:-1]) >= rep.t_certified
    assert sd_fine[beyond].min() >= -1e-9  # halving delta never flips a certified sign


# -- limits ----------------------------------------------------------------------


def test_limit_estimate_constant_profile():
    from hilbertgeo.asymptotic import DistanceProfile
    ts = np.array([0.05 * i for i in range(241)])
    prof = DistanceProfile(ts, np.full(241, 1.75))
    est = limit_estimate(prof)
    assert est.value == 1.75
    assert est.cauchy


def test_limit_estimate_synchronized_decay():
    f, g = symmetric_circle_pair(178.0)
    pair = synchronize(CIRCLE, f, g)
    prof = distance_profile(CIRCLE, pair, 0.0, 10.0, 201)
    est = limit_estimate(prof)
    assert est.value < 1e-3
    longer = limit_estimate(distance_profile(CIRCLE, pair, 0.0, 25.0, 501))
    assert longer.cauchy  # monotone settling flagged on the longer horizon


def test_limit_estimate_offset_pair_sees_the_shift():
    shift = 0.8
    f, g = symmetric_circle_pair(178.0)
    f_shifted = GeodesicLine(CIRCLE, f.a, f.b, f.u_fraction(shift), f.gap_fraction(shift))
    pair = GeodesicPair(CIRCLE, f_shifted, g)
    prof = distance_profile(CIRCLE, pair, 0.0, 12.0, 241)
    est = limit_estimate(prof)
    assert est.value == pytest.approx(shift, abs=2e-3)


# -- phi -------------------------------------------------------------------------


def test_phi_value_at_zero():
    assert phi_value(PhiParams(0.5, 1.0), 0.0) == pytest.approx(math.log(1.5), abs=1e-15)


def test_phi_second_matches_finite_differences():
    worst = 0.0
    for a in (-0.25, 0.25, 0.5, 1.0, 3.0):
        for b in (0.1, 0.5, 1.0, 3.0, 10.0):
            p = PhiParams(a, b)
            for k in range(20):
                t = 3.0 + 9.0 * k / 19.0
                d = 1e-3
                fd = (phi_value(p, t + d) - 2 * phi_value(p, t) + phi_value(p, t - d)) / d ** 2
                worst = max(worst, abs(phi_second(p, t) - fd))
    assert worst < 1e-6


def test_phi_second_tail_scale():
    for b in (0.5, 2.0):
        p = PhiParams(1.0, b)
        assert phi_second(p, 30.0) * math.exp(30.0) == pytest.approx(1.0 / b, rel=1e-6)


def test_phi_second_positive_beyond_sign_scan():
    for a, b in ((-0.25, 0.3), (0.5, 1.0), (3.0, 0.2), (1.0, 10.0)):
        p = PhiParams(a, b)
        ts = [0.5 + 0.1 * k for k in range(400)]
        signs = [phi_second(p, t) > 0 for t in ts]
        flips = [i for i in range(1, len(ts)) if signs[i] != signs[i - 1]]
        t_star = ts[flips[-1]] if flips else ts[0]
        assert all(phi_second(p, t) > 0 for t in ts if t >= t_star)


def test_phi_denominator_guard():
    with pytest.raises(GeometryError):
        phi_value(PhiParams(-2.0, 0.1), 0.5)
    with pytest.raises(GeometryError):
        PhiParams(0.5, 0.0)


# -- vertex lower bound ------------------------------------------------------------


def test_vertex_lower_bound_square():
    sq = PolygonDomain([Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)])
    xi = BoundaryPoint(Point(0.0, 0.0), 0, 0.0)
    f = GeodesicLine(sq, BoundaryPoint(Point(1.0, 0.5), 1, 0.5), xi, 0.5)
    g = GeodesicLine(sq, BoundaryPoint(Point(0.5, 1.0), 2, 0.5), xi, 0.5)
    pair = GeodesicPair(sq, f, g)
    floor = wedge_pencil_distance((1.0, 0.5), (0.5, 1.0), (1.0, 0.0), (0.0, 1.0))
    assert floor == pytest.approx(2 * math.log(2), abs=1e-12)
    mn = vertex_lower_bound_check(sq, pair, 15.0)
    assert mn > 0.1
    assert mn >= floor - 1e-12


def test_vertex_lower_bound_trapezoid_corner():
    trap = PolygonDomain(TRAPEZOID)
    xi = BoundaryPoint(Point(2.0, 0.0), 0, 0.0)
    f = geodesic_toward(trap, Point(0.5, 0.5), xi)
    g = geodesic_toward(trap, Point(0.0, 0.3), xi)
    pair = GeodesicPair(trap, f, g)
    assert vertex_lower_bound_check(trap, pair, 15.0) > 0.0


def test_vertex_lower_bound_rejects_smooth_point():
    trap = PolygonDomain(TRAPEZOID)
    xi = BoundaryPoint(Point(0.7, 0.0), 3, 0.5)  # edge interior
    f = geodesic_toward(trap, Point(0.5, 0.5), xi)
    g = geodesic_toward(trap, Point(0.0, 0.3), xi)
    pair = GeodesicPair(trap, f, g)
    with pytest.raises(GeometryError):
        vertex_lower_bound_check(trap, pair, 15.0)
