"""Planar projective primitives: points, lines, cross ratios, 3x3 maps.

Lines are homogeneous triples (a, b, c) for ax + by + c = 0, kept with a
unit normal so residuals read as Euclidean distances.  Projective maps act
on homogeneous column vectors (x : y : 1) and are normalized so the entry
of largest magnitude is 1, which keeps equality tests and conditioning
predictable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import CollinearityError, DegenerateChordError, GeometryError, VanishingLineError

COLLINEARITY_TOL = 1e-12
VANISHING_TOL = 1e-14


@dataclass(frozen=True, slots=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise GeometryError(f"non-finite point ({self.x}, {self.y})")

    def __iter__(self):
        yield self.x
        yield self.y

    def __sub__(self, other: "Point") -> tuple[float, float]:
        return (self.x - other.x, self.y - other.y)


def dist(p: Point, q: Point) -> float:
    return math.hypot(p.x - q.x, p.y - q.y)


def _cross2(u: Sequence[float], v: Sequence[float]) -> float:
    return u[0] * v[1] - u[1] * v[0]


@dataclass(frozen=True, slots=True)
class HomLine:
    """Line ax + by + c = 0 with a^2 + b^2 = 1 (normalized on construction)."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        n = math.hypot(self.a, self.b)
        if n < 1e-300:
            raise GeometryError("degenerate line: (a, b) = (0, 0)")
        object.__setattr__(self, "a", self.a / n)
        object.__setattr__(self, "b", self.b / n)
        object.__setattr__(self, "c", self.c / n)

    def value_at(self, p: Point) -> float:
        """Signed distance of p from the line."""
        return self.a * p.x + self.b * p.y + self.c

    def direction(self) -> tuple[float, float]:
        """A unit vector along the line."""
        return (-self.b, self.a)

    def parallel_through(self, p: Point) -> "HomLine":
        return HomLine(self.a, self.b, -(self.a * p.x + self.b * p.y))


def join(p1: Point, p2: Point) -> HomLine:
    """Line through two distinct points."""
    if p1.x == p2.x and p1.y == p2.y:
        raise GeometryError("join of coincident points")
    a = p1.y - p2.y
    b = p2.x - p1.x
    c = p1.x * p2.y - p2.x * p1.y
    return HomLine(a, b, c)


def intersect(l1: HomLine, l2: HomLine) -> Optional[Point]:
    """Meet of two lines, or None when they are parallel.

    Lines are unit-normalized, so the determinant is the sine of the angle
    between them; the parallel cutoff is taken at 1e-12.
    """
    det = l1.a * l2.b - l2.a * l1.b
    if abs(det) < 1e-12:
        return None
    x = (l1.b * l2.c - l2.b * l1.c) / det
    y = (l2.a * l1.c - l1.a * l2.c) / det
    return Point(x, y)


@dataclass(frozen=True, slots=True)
class CollinearQuad:
    """Four collinear points ordered pprime, p, q, qprime along their line."""

    pprime: Point
    p: Point
    q: Point
    qprime: Point

    def __post_init__(self):
        pts = (self.pprime, self.p, self.q, self.qprime)
        # Direction from the two extreme points; they must be distinct.
        dx = self.qprime.x - self.pprime.x
        dy = self.qprime.y - self.pprime.y
        scale = math.hypot(dx, dy)
        if scale == 0.0:
            raise GeometryError("quad extremes coincide")
        ux, uy = dx / scale, dy / scale
        for r in (self.p, self.q):
            # Normalized triple product = perpendicular offset / span.
            off = abs(_cross2((r.x - self.pprime.x, r.y - self.pprime.y), (ux, uy)))
            if off / scale > COLLINEARITY_TOL:
                raise CollinearityError(f"quad not collinear: offset {off:.3e}")
        s = [ (pt.x - self.pprime.x) * ux + (pt.y - self.pprime.y) * uy for pt in pts ]
        if not (s[0] <= s[1] + scale * 1e-12 and s[1] <= s[2] + scale * 1e-12
                and s[2] <= s[3] + scale * 1e-12):
            raise GeometryError("quad not ordered pprime, p, q, qprime along the line")


def cross_ratio(quad: CollinearQuad) -> float:
    """Cross ratio (|p'-q| |q'-p|) / (|p'-p| |q'-q|) of an ordered quad.

    With the ordering p', p, q, q' all four factors are nonnegative and the
    value is >= 1, with equality exactly when p = q.
    """
    d_pp = dist(quad.pprime, quad.p)
    d_qq = dist(quad.qprime, quad.q)
    if d_pp == 0.0 or d_qq == 0.0:
        raise DegenerateChordError("cross ratio division by zero: point lies on the boundary")
    if quad.p == quad.q:
        return 1.0
    return (dist(quad.pprime, quad.q) * dist(quad.qprime, quad.p)) / (d_pp * d_qq)


class ProjectiveMap:
    """Invertible 3x3 matrix acting on homogeneous coordinates (x : y : 1)."""

    __slots__ = ("m",)

    def __init__(self, m):
        m = np.asarray(m, dtype=float)
        if m.shape != (3, 3):
            raise GeometryError("projective map needs a 3x3 matrix")
        peak = np.max(np.abs(m))
        if peak == 0.0 or not np.isfinite(peak):
            raise GeometryError("invalid projective matrix")
        m = m / peak
        if abs(np.linalg.det(m)) < 1e-18:
            raise GeometryError("singular projective matrix")
        self.m = m
        self.m.setflags(write=False)

    @staticmethod
    def identity() -> "ProjectiveMap":
        return ProjectiveMap(np.eye(3))

    def inverse(self) -> "ProjectiveMap":
        return ProjectiveMap(np.linalg.inv(self.m))

    def compose(self, other: "ProjectiveMap") -> "ProjectiveMap":
        """self after other: (self.compose(other))(p) = self(other(p))."""
        return ProjectiveMap(self.m @ other.m)

    def homogeneous(self, p: Point) -> tuple[float, float, float]:
        v = self.m @ (p.x, p.y, 1.0)
        return (float(v[0]), float(v[1]), float(v[2]))

    def is_identity(self, tol: float = 1e-12) -> bool:
        return bool(np.allclose(self.m, np.eye(3) * self.m[2, 2], atol=tol))

    def __repr__(self):
        return f"ProjectiveMap({self.m.tolist()})"


def apply_map(m: ProjectiveMap, p: Point) -> Point:
    """Image of p, dehomogenized; raises when p maps to the vanishing line."""
    X, Y, W = m.homogeneous(p)
    if abs(W) < VANISHING_TOL:
        raise VanishingLineError(f"point ({p.x}, {p.y}) maps to the vanishing line (w={W:.2e})")
    return Point(X / W, Y / W)


def map_offset(m: ProjectiveMap, base: Point, base_image: Point, offset: tuple[float, float]) -> tuple[float, float]:
    """Image of (base + offset) relative to base_image, without cancellation.

    All terms of the returned difference are O(|offset|), so points very
    close to `base` keep full relative accuracy through the map.
    """
    M = m.m
    bx, by = base.x, base.y
    ox, oy = offset
    w0 = M[2, 0] * bx + M[2, 1] * by + M[2, 2]
    dw = M[2, 0] * ox + M[2, 1] * oy
    w1 = w0 + dw
    if abs(w1) < VANISHING_TOL or abs(w0) < VANISHING_TOL:
        raise VanishingLineError("offset image crosses the vanishing line")
    out = []
    for row, bcoord in ((0, base_image.x), (1, base_image.y)):
        dnum = M[row, 0] * ox + M[row, 1] * oy
        # (N0 + dnum)/w1 - N0/w0 with N0/w0 = bcoord: all terms O(offset).
        out.append((dnum - bcoord * dw) / w1)
    return (out[0], out[1])


def transform_line(m: ProjectiveMap, line: HomLine) -> HomLine:
    """Image of a line under the map (covector times the inverse matrix)."""
    coeffs = np.array([line.a, line.b, line.c]) @ np.linalg.inv(m.m)
    return HomLine(coeffs[0], coeffs[1], coeffs[2])


def _check_no_three_collinear(pts: Sequence[Point], label: str) -> None:
    for i in range(4):
        others = [pts[j] for j in range(4) if j != i]
        a, b, c = others
        span = max(dist(a, b), dist(a, c), dist(b, c))
        if span == 0.0:
            raise CollinearityError(f"{label}: repeated points")
        area2 = abs(_cross2((b.x - a.x, b.y - a.y), (c.x - a.x, c.y - a.y)))
        if area2 / (span * span) < COLLINEARITY_TOL:
            raise CollinearityError(f"{label}: three points are collinear")


def _basis_matrix(pts: Sequence[Point]) -> np.ndarray:
    """Matrix sending the projective basis e1, e2, e3, (1,1,1) to the four points."""
    h = np.array([[p.x for p in pts[:3]], [p.y for p in pts[:3]], [1.0, 1.0, 1.0]])
    rhs = np.array([pts[3].x, pts[3].y, 1.0])
    lam = np.linalg.solve(h, rhs)
    return h * lam


def map_from_correspondence(src: Sequence[Point], dst: Sequence[Point]) -> ProjectiveMap:
    """Unique projective map sending src[i] to dst[i] for four points.

    Requires that no three of the source points and no three of the
    destination points are collinear.
    """
    if len(src) != 4 or len(dst) != 4:
        raise GeometryError("need exactly four source and four destination points")
    _check_no_three_collinear(src, "source")
    _check_no_three_collinear(dst, "destination")
    m = ProjectiveMap(_basis_matrix(dst) @ np.linalg.inv(_basis_matrix(src)))
    for s, d in zip(src, dst):
        img = apply_map(m, s)
        if abs(img.x - d.x) > 1e-10 or abs(img.y - d.y) > 1e-10:
            raise GeometryError("correspondence residual exceeds 1e-10")
    return m
