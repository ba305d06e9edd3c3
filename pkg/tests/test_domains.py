import math
import random

import pytest

from hilbertgeo.domain_io import domain_from_json, domain_to_json
from hilbertgeo.domains import (
    BoundaryPoint,
    EllipseDomain,
    PolygonDomain,
    SmoothDomain,
    TransformedDomain,
    cubic_cap_domain,
    transform_domain,
)
from hilbertgeo.errors import (
    GeometryError,
    LineMissesDomainError,
    NotC2Error,
    SupportLineError,
    UnboundedImageError,
)
from hilbertgeo.metric import hilbert_distance
from hilbertgeo.projective import HomLine, Point, ProjectiveMap, apply_map, dist, join

TRAPEZOID = [Point(2, 0), Point(3, 1), Point(-2, 1), Point(-1, 0)]


def test_validate_square_and_trapezoid():
    assert PolygonDomain([Point(1, 1), Point(-1, 1), Point(-1, -1), Point(1, -1)]).validate() == []
    assert PolygonDomain(TRAPEZOID).validate() == []


def test_validate_reflex_vertex():
    bad = PolygonDomain([Point(0, 0), Point(2, 0), Point(1, 0.1), Point(1, 2)])
    errs = bad.validate()
    assert any("non-convex at index" in e for e in errs)


def test_contains_examples():
    disk = EllipseDomain(0, 0, 1, 1)
    assert disk.contains(Point(0, 0))
    assert not disk.contains(Point(1, 0))
    trap = PolygonDomain(TRAPEZOID)
    assert trap.contains(Point(0, 0.5))
    assert not trap.contains(Point(0, 0))  # boundary excluded


def test_chord_disk_diameter():
    disk = EllipseDomain(0, 0, 1, 1)
    b1, b2 = disk.chord(HomLine(0, 1, 0))
    xs = sorted((b1.point.x, b2.point.x))
    assert xs[0] == pytest.approx(-1.0, abs=1e-12)
    assert xs[1] == pytest.approx(1.0, abs=1e-12)
    assert abs(b1.point.y) < 1e-12 and abs(b2.point.y) < 1e-12


def test_chord_trapezoid_vertical():
    trap = PolygonDomain(TRAPEZOID)
    b1, b2 = trap.chord(join(Point(1, 0.2), Point(1, 0.8)))
    ys = sorted((b1.point.y, b2.point.y))
    assert ys == [pytest.approx(0.0, abs=1e-12), pytest.approx(1.0, abs=1e-12)]
    assert b1.point.x == pytest.approx(1.0, abs=1e-12)


def test_chord_cubic_domain():
    cub = cubic_cap_domain(1.0)
    b1, b2 = cub.chord(HomLine(0, 1, -0.125))
    xs = sorted((b1.point.x, b2.point.x))
    assert xs[0] == pytest.approx(-0.5, abs=1e-12)
    assert xs[1] == pytest.approx(0.5, abs=1e-12)


def test_chord_misses_domain():
    disk = EllipseDomain(0, 0, 1, 1)
    with pytest.raises(LineMissesDomainError):
        disk.chord(HomLine(0, 1, -2.0))


def test_chord_boundary_residuals_and_ordering():
    rng = random.Random(5)
    domains = [EllipseDomain(0.2, -0.1, 1.3, 0.8), PolygonDomain(TRAPEZOID), cubic_cap_domain(1.0)]
    boxes = [((-1.0, 1.4), (-0.8, 0.6)), ((-1.9, 2.9), (0.05, 0.95)), ((-0.9, 0.9), (0.05, 0.95))]
    for dom, box in zip(domains, boxes):
        count = 0
        while count < 170:
            p = Point(rng.uniform(*box[0]), rng.uniform(*box[1]))
            q = Point(rng.uniform(*box[0]), rng.uniform(*box[1]))
            if p == q or not (dom.contains(p) and dom.contains(q)):
                continue
            b1, b2 = dom.chord(join(p, q))
            ux, uy = q.x - p.x, q.y - p.y
            s1 = (b1.point.x - p.x) * ux + (b1.point.y - p.y) * uy
            s2 = (b2.point.x - p.x) * ux + (b2.point.y - p.y) * uy
            lo, hi = sorted((s1, s2))
            sq = ux * ux + uy * uy
            assert lo < 0.0 < sq < hi  # p and q strictly between the crossings
            for b in (b1, b2):
                assert not dom.contains(b.point)
            count += 1


def test_boundary_residuals_smooth():
    ell = EllipseDomain(0.0, 0.0, 2.0, 1.0)
    b1, b2 = ell.chord(join(Point(0.3, 0.2), Point(-0.5, 0.4)))
    for b in (b1, b2):
        q = (b.point.x / 2.0) ** 2 + b.point.y ** 2
        assert abs(q - 1.0) < 1e-10


def test_curvature_examples():
    disk = EllipseDomain(0, 0, 1, 1)
    b1, _ = disk.chord(HomLine(0, 1, 0))
    assert disk.curvature_at(b1) == pytest.approx(1.0, abs=1e-12)
    cub = cubic_cap_domain(1.0)
    bp = BoundaryPoint(Point(1.0, 1.0), 1, 1.0)
    with pytest.raises(NotC2Error):
        cub.curvature_at(bp)  # cap corner
    interior = BoundaryPoint(Point(0.99, 0.99 ** 3), 1, 0.99)
    kappa = cub.curvature_at(interior)
    x = 0.99
    assert kappa == pytest.approx(6 * x / (1 + 9 * x ** 4) ** 1.5, rel=1e-12)
    origin = BoundaryPoint(Point(0.0, 0.0), 1, 0.0)
    assert cub.curvature_at(origin) == 0.0


def test_polygon_vertex_curvature_and_support():
    trap = PolygonDomain(TRAPEZOID)
    edge_pt = BoundaryPoint(Point(0.5, 0.0), 3, 0.5)
    assert trap.curvature_at(edge_pt) == 0.0
    vertex = BoundaryPoint(Point(2.0, 0.0), 0, 0.0)
    with pytest.raises(NotC2Error):
        trap.curvature_at(vertex)
    with pytest.raises(SupportLineError):
        trap.support_line_at(vertex)
    line = trap.support_line_at(edge_pt)
    assert abs(line.value_at(Point(-0.5, 0.0))) < 1e-12


def test_transform_identity_and_roundtrip():
    trap = PolygonDomain(TRAPEZOID)
    ident = ProjectiveMap.identity()
    assert transform_domain(ident, trap) is trap
    mat = [[1.1, 0.2, 0.1], [-0.1, 0.9, 0.0], [0.02, -0.03, 1.0]]
    m = ProjectiveMap(mat)
    image = transform_domain(m, trap)
    back = transform_domain(m.inverse(), image)
    for v, w in zip(trap.vertices, back.vertices):
        assert dist(v, w) < 1e-9


def test_transform_affine_disk_is_ellipse():
    disk = EllipseDomain(0, 0, 1, 1)
    m = ProjectiveMap([[2, 0, 0], [0, 1, 0], [0, 0, 1]])
    image = transform_domain(m, disk)
    direct = EllipseDomain(0, 0, 2, 1)
    p, q = Point(0.3, 0.2), Point(-0.6, -0.4)
    d_img = hilbert_distance(image, p, q)
    assert d_img == pytest.approx(hilbert_distance(direct, p, q), abs=1e-10)
    # affine invariance of the cross ratio: distances agree with preimages
    assert d_img == pytest.approx(
        hilbert_distance(disk, Point(0.15, 0.2), Point(-0.3, -0.4)), abs=1e-10)


def test_transform_unbounded_image_rejected():
    trap = PolygonDomain(TRAPEZOID)
    # vanishing line x = 0.5 crosses the interior
    m = ProjectiveMap([[1, 0, 0], [0, 1, 0], [1, 0, -0.5]])
    with pytest.raises(UnboundedImageError):
        transform_domain(m, trap)


def test_transformed_domain_curvature_chain_rule():
    disk = EllipseDomain(0, 0, 1, 1)
    m = ProjectiveMap([[1.0, 0.1, 0.02], [-0.05, 0.9, 0.01], [0.03, 0.01, 1.0]])
    image = transform_domain(m, disk)
    assert isinstance(image, TransformedDomain)
    b1, b2 = image.chord(join(Point(0.05, 0.02), Point(-0.1, 0.06)))
    kappa = image.curvature_at(b1)
    # compare against a central-difference estimate along the image boundary
    s = b1.param
    h = 1e-4
    pts = [apply_map(m, Point(math.cos(2 * math.pi * (s + k * h)),
                              math.sin(2 * math.pi * (s + k * h))))
           for k in (-1, 0, 1)]
    d1 = ((pts[2].x - pts[0].x) / (2 * h), (pts[2].y - pts[0].y) / (2 * h))
    d2 = ((pts[2].x - 2 * pts[1].x + pts[0].x) / h ** 2,
          (pts[2].y - 2 * pts[1].y + pts[0].y) / h ** 2)
    est = abs(d1[0] * d2[1] - d1[1] * d2[0]) / (d1[0] ** 2 + d1[1] ** 2) ** 1.5
    assert kappa == pytest.approx(est, rel=1e-5)


def test_smooth_domain_validation():
    tau = 2 * math.pi
    dom = SmoothDomain(
        pos=lambda s: (1.3 * math.cos(tau * s), 0.7 * math.sin(tau * s)),
        d1=lambda s: (-1.3 * tau * math.sin(tau * s), 0.7 * tau * math.cos(tau * s)),
        d2=lambda s: (-1.3 * tau * tau * math.cos(tau * s), -0.7 * tau * tau * math.sin(tau * s)),
    )
    assert dom.validate() == []
    bad = SmoothDomain(
        pos=dom.pos,
        d1=lambda s: (1.0, 1.0),  # inconsistent oracle
        d2=dom.d2,
    )
    assert any("inconsistent" in e for e in bad.validate())


def test_piecewise_joint_smoothness_by_finite_differences():
    from hilbertgeo.counterexample import CounterexampleParams, build_counterexample_domain
    dom = build_counterexample_domain(CounterexampleParams(x0=0.25, levels=1))
    h = 1e-7
    for a, b in zip(dom.pieces, dom.pieces[1:]):
        x = a.x1
        assert a.x1 == b.x0
        assert abs(a.value(x) - b.value(x)) <= 1e-12
        fd_a = (a.value(x) - a.value(x - h)) / h
        fd_b = (b.value(x + h) - b.value(x)) / h
        assert abs(fd_a - fd_b) < 1e-6  # first derivatives agree across the joint
        assert abs(a.d1(x) - b.d1(x)) < 1e-9
        assert abs(a.d2(x) - b.d2(x)) < 1e-6


def test_domain_json_round_trips():
    trap = PolygonDomain(TRAPEZOID)
    obj = domain_to_json(trap)
    trap2 = domain_from_json(obj)
    assert all(dist(a, b) == 0.0 for a, b in zip(trap.vertices, trap2.vertices))

    ell = EllipseDomain(0.25, -0.5, 2.0, 1.0)
    ell2 = domain_from_json(domain_to_json(ell))
    assert (ell2.cx, ell2.cy, ell2.rx, ell2.ry) == (0.25, -0.5, 2.0, 1.0)

    cub = domain_from_json({"type": "cubic-graph", "half_width": 1.0})
    assert cub.cap_y == 1.0 and cub.x_left == -1.0
    cub2 = domain_from_json(domain_to_json(cub))
    assert len(cub2.pieces) == len(cub.pieces)
    assert cub2.lower(0.37) == cub.lower(0.37)


def test_domain_json_rejects_garbage():
    with pytest.raises(GeometryError):
        domain_from_json({"type": "klein-bottle"})
    with pytest.raises(GeometryError):
        domain_from_json({"type": "polygon", "vertices": [[0, 0], [1, 0], [2, 0]]})
