"""Hilbert distance and straight-chord geodesics with arc-length parametrization.

A geodesic line is stored as its chord (two boundary endpoints a, b) plus
the normalized position u0 of the base point f(0) on [a, b].  The logistic
reparametrization

    u(t) = u0 e^t / (1 - u0 + u0 e^t)

makes t exact Hilbert arc length: h(f(t1), f(t2)) = |t1 - t2| for every
chord, which reduces to the textbook gap law E(t) = 1/(e^t + 1) when f(0)
is the chord midpoint and the chord has unit length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .domains import BoundaryPoint, Domain
from .errors import GeometryError, NotInteriorError
from .projective import HomLine, Point, dist, join


def _chord_factors(domain: Domain, p: Point, q: Point) -> tuple[float, float, float]:
    """(s_lo, s_q, s_hi): line parameters of p' (at s_lo < 0), q, q' along p->q."""
    d = dist(p, q)
    ux, uy = (q.x - p.x) / d, (q.y - p.y) / d
    s_lo, s_hi = domain.chord_line_params(p, (0.0, 0.0), (ux, uy))
    return s_lo, d, s_hi


def hilbert_distance(domain: Domain, p: Point, q: Point) -> float:
    """Hilbert distance log of the chord cross ratio; 0 exactly when p = q."""
    if p.x == q.x and p.y == q.y:
        return 0.0
    if (q.x, q.y) < (p.x, p.y):
        p, q = q, p  # canonical order: the formula is symmetric, keep it bit-exact
    for pt in (p, q):
        if not domain.contains(pt):
            raise NotInteriorError(f"point not interior: ({pt.x}, {pt.y})")
    s_lo, s_q, s_hi = _chord_factors(domain, p, q)
    if not (s_lo < 0.0 < s_q < s_hi):
        raise GeometryError("chord does not bracket the two points")
    # (|p'-q| |q'-p|) / (|p'-p| |q'-q|) in line coordinates.
    ratio = ((s_q - s_lo) * s_hi) / ((-s_lo) * (s_hi - s_q))
    return math.log(ratio)


@dataclass(frozen=True)
class GeodesicLine:
    """Chord geodesic: a = f(-inf), b = f(+inf), base at u0 in (0, 1).

    gap0 is the complementary fraction 1 - u0 kept as its own field; the
    constructors compute it from |f(0) - b| directly, so bases very close
    to either endpoint keep full relative accuracy in both tails.
    """

    domain: Domain
    a: BoundaryPoint
    b: BoundaryPoint
    u0: float
    gap0: float = None  # type: ignore[assignment]

    def __post_init__(self):
        if not 0.0 < self.u0 < 1.0:
            raise GeometryError(f"base position u0={self.u0} outside (0, 1)")
        if self.gap0 is None:
            object.__setattr__(self, "gap0", 1.0 - self.u0)
        if not 0.0 < self.gap0 < 1.0:
            raise GeometryError(f"gap fraction {self.gap0} outside (0, 1)")

    @property
    def length(self) -> float:
        return dist(self.a.point, self.b.point)

    def gap_fraction(self, t: float) -> float:
        """1 - u(t): the normalized Euclidean gap to the forward endpoint b."""
        if t >= 0.0:
            w = self.gap0 * math.exp(-t)
            return w / (self.u0 + w)
        return self.gap0 / (self.gap0 + self.u0 * math.exp(t))

    def u_fraction(self, t: float) -> float:
        """u(t): the normalized position measured from the backward endpoint."""
        if t >= 0.0:
            return self.u0 / (self.u0 + self.gap0 * math.exp(-t))
        w = self.u0 * math.exp(t)
        return w / (self.gap0 + w)

    def point_at(self, t: float) -> Point:
        g = self.gap_fraction(t)
        ax, ay = self.a.point.x, self.a.point.y
        bx, by = self.b.point.x, self.b.point.y
        return Point(bx + g * (ax - bx), by + g * (ay - by))

    def offset_from_b(self, t: float) -> tuple[float, float]:
        """f(t) - b as a vector, exact at the scale of the gap."""
        g = self.gap_fraction(t)
        return (g * (self.a.point.x - self.b.point.x),
                g * (self.a.point.y - self.b.point.y))

    def euclid_gap(self, t: float) -> float:
        """E(t) = |f(t) - f(+inf)| = (1 - u(t)) |b - a|."""
        return self.gap_fraction(t) * self.length

    def param_distance(self, t1: float, t2: float) -> float:
        """h(f(t1), f(t2)) from the chord cross ratio alone (equals |t1-t2|)."""
        g1, g2 = self.gap_fraction(t1), self.gap_fraction(t2)
        u1, u2 = self.u_fraction(t1), self.u_fraction(t2)
        return abs(math.log((g1 * u2) / (g2 * u1)))


@dataclass(frozen=True)
class EuclidGap:
    t: float
    value: float


def euclid_gap(f: GeodesicLine, t: float) -> EuclidGap:
    return EuclidGap(t, f.euclid_gap(t))


def geodesic_through(domain: Domain, p: Point, q: Point) -> GeodesicLine:
    """Geodesic along the chord of p, q with forward endpoint on the q side."""
    if p.x == q.x and p.y == q.y:
        raise GeometryError("geodesic needs two distinct points")
    for pt in (p, q):
        if not domain.contains(pt):
            raise NotInteriorError(f"point not interior: ({pt.x}, {pt.y})")
    b1, b2 = domain.chord(join(p, q))
    ux, uy = q.x - p.x, q.y - p.y
    s1 = (b1.point.x - p.x) * ux + (b1.point.y - p.y) * uy
    s2 = (b2.point.x - p.x) * ux + (b2.point.y - p.y) * uy
    if s1 > s2:
        b1, b2 = b2, b1
    a, b = b1, b2
    length = dist(a.point, b.point)
    return GeodesicLine(domain, a, b, dist(p, a.point) / length,
                        dist(p, b.point) / length)


def geodesic_toward(domain: Domain, p: Point, xi: BoundaryPoint) -> GeodesicLine:
    """Geodesic through interior p whose forward endpoint is exactly xi.

    Keeping the supplied boundary point bitwise as b makes asymptotic pairs
    share their forward endpoint exactly, which the near-field chord
    evaluation relies on.
    """
    if not domain.contains(p):
        raise NotInteriorError(f"point not interior: ({p.x}, {p.y})")
    d = dist(p, xi.point)
    ux, uy = (xi.point.x - p.x) / d, (xi.point.y - p.y) / d
    s_lo, s_hi = domain.chord_line_params(p, (0.0, 0.0), (ux, uy))
    if not s_lo < 0.0:
        raise GeometryError("backward boundary crossing not found")
    a_pt = Point(p.x + s_lo * ux, p.y + s_lo * uy)
    a = BoundaryPoint(a_pt, -1, math.nan)
    length = d - s_lo
    return GeodesicLine(domain, a, xi, (-s_lo) / length, d / length)
