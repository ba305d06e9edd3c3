"""Bounded convex planar domains: polygons, smooth ovals, piecewise boundaries.

Every domain answers the same queries: validation, strict interior test,
chord of a line (the two boundary crossings, ordered along the line), and
curvature at a boundary point.  ``chord_line_params`` is the numerically
hardened variant used for asymptotic-pair sampling: the line is given as
``origin + offset + s * dirv`` and the crossings are solved in coordinates
shifted to ``origin``, so crossings exponentially close to a boundary point
keep full relative accuracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import (
    GeometryError,
    LineMissesDomainError,
    NotC2Error,
    UnboundedImageError,
)
from .pieces import CubicAbsPiece, GraphPiece, SegmentPiece
from .projective import HomLine, Point, ProjectiveMap, apply_map, dist

EDGE_SNAP_TOL = 1e-9       # shifted-edge offset below this means "through the origin"
PARAM_REFINE_TOL = 1e-12   # spec floor; refinement actually runs to relative 1e-15
SCAN_SAMPLES = 1024        # bracket scan for generic smooth boundaries


@dataclass(frozen=True)
class BoundaryPoint:
    point: Point
    piece: int
    param: float


def _refine_root(fn: Callable[[float], float], lo: float, hi: float,
                 flo: float, fhi: float) -> float:
    """Hybrid bisection/secant root refinement on a sign-changing bracket."""
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    for _ in range(200):
        span = hi - lo
        if span <= 1e-15 * max(abs(lo), abs(hi)) or span <= 5e-324:
            break
        mid = 0.5 * (lo + hi)
        denom = fhi - flo
        x = mid
        if denom != 0.0:
            cand = (lo * fhi - hi * flo) / denom
            # Accept the secant step only if it lands safely inside.
            if lo + 0.01 * span < cand < hi - 0.01 * span:
                x = cand
        fx = fn(x)
        if fx == 0.0:
            return x
        if (flo < 0.0) == (fx < 0.0):
            lo, flo = x, fx
        else:
            hi, fhi = x, fx
    return 0.5 * (lo + hi)


def _scan_roots(fn: Callable[[float], float], lo: float, hi: float, n: int) -> list[float]:
    """All roots of fn on [lo, hi] found by uniform scan plus refinement."""
    roots: list[float] = []
    xs = [lo + (hi - lo) * i / n for i in range(n + 1)]
    fs = [fn(x) for x in xs]
    for i in range(n):
        f0, f1 = fs[i], fs[i + 1]
        if f0 == 0.0:
            roots.append(xs[i])
        elif (f0 < 0.0) != (f1 < 0.0):
            roots.append(_refine_root(fn, xs[i], xs[i + 1], f0, f1))
    if fs[-1] == 0.0:
        roots.append(xs[-1])
    return roots


def _dedupe_sorted(vals: list[float], tol: float) -> list[float]:
    vals = sorted(vals)
    out: list[float] = []
    for v in vals:
        if not out or v - out[-1] > tol:
            out.append(v)
    return out


class Domain:
    """Interface shared by all domain representations."""

    def validate(self) -> list[str]:
        raise NotImplementedError

    def contains(self, p: Point) -> bool:
        raise NotImplementedError

    def chord(self, line: HomLine) -> tuple[BoundaryPoint, BoundaryPoint]:
        raise NotImplementedError

    def curvature_at(self, b: BoundaryPoint) -> float:
        raise NotImplementedError

    def boundary_samples(self, n: int) -> list[Point]:
        raise NotImplementedError

    def support_line_at(self, b: BoundaryPoint) -> HomLine:
        raise NotImplementedError

    def chord_line_params(self, origin: Point, offset: tuple[float, float],
                          dirv: tuple[float, float],
                          anchored: bool = False) -> tuple[float, float]:
        """Crossing parameters (s_lo, s_hi) of the line origin + offset + s dirv.

        With ``anchored=True`` the origin is promised to be a boundary point
        and representations may snap the incident boundary element exactly
        through it.  Generic fallback: solve the unshifted chord and project
        back.  Domain types with an analytic boundary override this with
        cancellation-free versions.
        """
        base = Point(origin.x + offset[0], origin.y + offset[1])
        far = Point(base.x + dirv[0], base.y + dirv[1])
        from .projective import join
        b1, b2 = self.chord(join(base, far))
        s1 = (b1.point.x - base.x) * dirv[0] + (b1.point.y - base.y) * dirv[1]
        s2 = (b2.point.x - base.x) * dirv[0] + (b2.point.y - base.y) * dirv[1]
        nrm = dirv[0] * dirv[0] + dirv[1] * dirv[1]
        return tuple(sorted((s1 / nrm, s2 / nrm)))  # type: ignore[return-value]

    def ensure_valid(self) -> "Domain":
        errs = self.validate()
        if errs:
            raise GeometryError("; ".join(errs))
        return self


def _order_crossings(cands: list[tuple[float, BoundaryPoint]], line: HomLine,
                     scale: float) -> tuple[BoundaryPoint, BoundaryPoint]:
    cands.sort(key=lambda c: c[0])
    pruned: list[tuple[float, BoundaryPoint]] = []
    for s, bp in cands:
        if not pruned or s - pruned[-1][0] > 1e-9 * scale:
            pruned.append((s, bp))
    if len(pruned) < 2:
        raise LineMissesDomainError("line misses domain")
    return pruned[0][1], pruned[-1][1]


class PolygonDomain(Domain):
    """Open interior of a strictly convex polygon, vertices counterclockwise."""

    def __init__(self, vertices: Sequence[Point]):
        self.vertices = [Point(v.x, v.y) if not isinstance(v, Point) else v
                         for v in vertices]
        self._scale = max(max(abs(v.x), abs(v.y)) for v in self.vertices) or 1.0

    def __len__(self):
        return len(self.vertices)

    def validate(self) -> list[str]:
        out = []
        n = len(self.vertices)
        if n < 3:
            return ["polygon needs at least 3 vertices"]
        for i in range(n):
            a = self.vertices[i]
            b = self.vertices[(i + 1) % n]
            if a.x == b.x and a.y == b.y:
                out.append(f"repeated vertex at index {i}")
        for i in range(n):
            a = self.vertices[i - 1]
            b = self.vertices[i]
            c = self.vertices[(i + 1) % n]
            ux, uy = b.x - a.x, b.y - a.y
            vx, vy = c.x - b.x, c.y - b.y
            cross = ux * vy - uy * vx
            norm = math.hypot(ux, uy) * math.hypot(vx, vy)
            if norm == 0.0 or cross / norm <= 1e-12:
                out.append(f"non-convex at index {i}")
        return out

    def edges(self):
        n = len(self.vertices)
        for i in range(n):
            yield i, self.vertices[i], self.vertices[(i + 1) % n]

    def contains(self, p: Point) -> bool:
        # Strict interior with a thin exclusion shell so that computed
        # boundary crossings always test False.
        for _, a, b in self.edges():
            cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)
            if cross <= 1e-12 * math.hypot(b.x - a.x, b.y - a.y) * self._scale:
                return False
        return True

    def chord(self, line: HomLine) -> tuple[BoundaryPoint, BoundaryPoint]:
        dx, dy = line.direction()
        cands = []
        for i, a, b in self.edges():
            va, vb = line.value_at(a), line.value_at(b)
            if va == vb:
                continue
            u = va / (va - vb)
            if -1e-12 <= u <= 1.0 + 1e-12:
                pt = Point(a.x + u * (b.x - a.x), a.y + u * (b.y - a.y))
                s = pt.x * dx + pt.y * dy
                cands.append((s, BoundaryPoint(pt, i, u)))
        return _order_crossings(cands, line, self._scale)

    def chord_line_params(self, origin, offset, dirv, anchored=False):
        ox, oy = origin.x, origin.y
        px, py = offset
        dx, dy = dirv
        ss = []
        for i, a, b in self.edges():
            ax, ay = a.x - ox, a.y - oy
            bx, by = b.x - ox, b.y - oy
            ex, ey = bx - ax, by - ay
            elen = math.hypot(ex, ey)
            nx, ny = -ey / elen, ex / elen
            c = -(nx * ax + ny * ay)
            if anchored and abs(c) < EDGE_SNAP_TOL:
                c = 0.0  # edge passes through the origin boundary point
            denom = nx * dx + ny * dy
            if denom == 0.0:
                continue
            s = -(nx * px + ny * py + c) / denom
            qx, qy = px + s * dx, py + s * dy
            u = ((qx - ax) * ex + (qy - ay) * ey) / (elen * elen)
            if -1e-9 <= u <= 1.0 + 1e-9:
                ss.append(s)
        ss = _dedupe_sorted(ss, 1e-9 * self._scale)
        if len(ss) < 2:
            raise LineMissesDomainError("line misses domain")
        return ss[0], ss[-1]

    def curvature_at(self, b: BoundaryPoint) -> float:
        if b.param < 1e-9 or b.param > 1.0 - 1e-9:
            raise NotC2Error("not C2 here: polygon vertex")
        return 0.0

    def support_line_at(self, b: BoundaryPoint) -> HomLine:
        if b.param < 1e-9 or b.param > 1.0 - 1e-9:
            from .errors import SupportLineError
            raise SupportLineError("support line undefined at a polygon vertex")
        a = self.vertices[b.piece]
        c = self.vertices[(b.piece + 1) % len(self.vertices)]
        from .projective import join
        return join(a, c)

    def boundary_samples(self, n: int) -> list[Point]:
        out = []
        m = len(self.vertices)
        per = max(1, n // m)
        for _, a, b in self.edges():
            for k in range(per):
                u = k / per
                out.append(Point(a.x + u * (b.x - a.x), a.y + u * (b.y - a.y)))
        return out

    def vertex_index_near(self, p: Point, tol: float = 1e-9) -> Optional[int]:
        for i, v in enumerate(self.vertices):
            if dist(v, p) <= tol:
                return i
        return None


class SmoothDomain(Domain):
    """Closed C2 boundary given by parametric oracles on s in [0, 1]."""

    def __init__(self, pos, d1, d2, curvature_positive_everywhere: bool = True):
        self.pos = pos
        self.d1 = d1
        self.d2 = d2
        self.curvature_positive_everywhere = curvature_positive_everywhere

    def validate(self) -> list[str]:
        out = []
        p0, p1 = self.pos(0.0), self.pos(1.0)
        if math.hypot(p0[0] - p1[0], p0[1] - p1[1]) > 1e-9:
            out.append("boundary curve is not closed")
        h = 1e-5
        for k in range(64):
            s = (k + 0.5) / 64.0
            x1, y1 = self.d1(s)
            fx = (self.pos(s + h)[0] - self.pos(s - h)[0]) / (2 * h)
            fy = (self.pos(s + h)[1] - self.pos(s - h)[1]) / (2 * h)
            speed = math.hypot(x1, y1)
            if math.hypot(fx - x1, fy - y1) > 1e-6 * max(1.0, speed):
                out.append(f"first-derivative oracle inconsistent near s={s:.4f}")
                break
        for k in range(256):
            s = k / 256.0
            if self.signed_curvature(s) < -1e-9:
                out.append(f"negative curvature at s={s:.4f}")
                break
        return out

    def signed_curvature(self, s: float) -> float:
        x1, y1 = self.d1(s)
        x2, y2 = self.d2(s)
        speed = math.hypot(x1, y1)
        return (x1 * y2 - y1 * x2) / speed ** 3

    def _point(self, s: float) -> Point:
        x, y = self.pos(s)
        return Point(x, y)

    def contains(self, p: Point) -> bool:
        ux, uy = math.cos(0.5), math.sin(0.5)
        try:
            s_lo, s_hi = Domain.chord_line_params(self, p, (0.0, 0.0), (ux, uy))
        except LineMissesDomainError:
            return False
        return s_lo < -1e-12 and s_hi > 1e-12

    def chord(self, line: HomLine) -> tuple[BoundaryPoint, BoundaryPoint]:
        fn = lambda s: line.value_at(self._point(s))
        roots = _scan_roots(fn, 0.0, 1.0, SCAN_SAMPLES)
        dx, dy = line.direction()
        cands = []
        for s in roots:
            pt = self._point(s)
            cands.append((pt.x * dx + pt.y * dy, BoundaryPoint(pt, 0, s % 1.0)))
        return _order_crossings(cands, line, 1.0)

    def chord_line_params(self, origin, offset, dirv, anchored=False):
        base = Point(origin.x + offset[0], origin.y + offset[1])
        far = Point(base.x + dirv[0], base.y + dirv[1])
        from .projective import join
        b1, b2 = self.chord(join(base, far))
        vals = []
        for bp in (b1, b2):
            vals.append(((bp.point.x - origin.x) - offset[0]) * dirv[0]
                        + ((bp.point.y - origin.y) - offset[1]) * dirv[1])
        nrm = dirv[0] ** 2 + dirv[1] ** 2
        return tuple(sorted(v / nrm for v in vals))

    def curvature_at(self, b: BoundaryPoint) -> float:
        return abs(self.signed_curvature(b.param))

    def support_line_at(self, b: BoundaryPoint) -> HomLine:
        x1, y1 = self.d1(b.param)
        p = b.point
        return HomLine(-y1, x1, y1 * p.x - x1 * p.y)

    def boundary_samples(self, n: int) -> list[Point]:
        return [self._point(k / n) for k in range(n)]


class EllipseDomain(SmoothDomain):
    """Axis-aligned ellipse ((x-cx)/rx)^2 + ((y-cy)/ry)^2 < 1."""

    def __init__(self, cx: float, cy: float, rx: float, ry: float):
        if rx <= 0 or ry <= 0:
            raise GeometryError("ellipse radii must be positive")
        self.cx, self.cy, self.rx, self.ry = cx, cy, rx, ry
        tau = 2.0 * math.pi
        super().__init__(
            pos=lambda s: (cx + rx * math.cos(tau * s), cy + ry * math.sin(tau * s)),
            d1=lambda s: (-rx * tau * math.sin(tau * s), ry * tau * math.cos(tau * s)),
            d2=lambda s: (-rx * tau * tau * math.cos(tau * s), -ry * tau * tau * math.sin(tau * s)),
        )

    def validate(self) -> list[str]:
        return []

    def _q(self, x: float, y: float) -> float:
        return ((x - self.cx) / self.rx) ** 2 + ((y - self.cy) / self.ry) ** 2 - 1.0

    def contains(self, p: Point) -> bool:
        return self._q(p.x, p.y) < -1e-12

    def _param_of(self, pt: Point) -> float:
        ang = math.atan2((pt.y - self.cy) / self.ry, (pt.x - self.cx) / self.rx)
        return (ang / (2.0 * math.pi)) % 1.0

    def chord_line_params(self, origin, offset, dirv, anchored=False):
        rx2, ry2 = self.rx * self.rx, self.ry * self.ry
        ox, oy = origin.x - self.cx, origin.y - self.cy
        q0 = (ox * ox) / rx2 + (oy * oy) / ry2 - 1.0
        gx, gy = 2.0 * ox / rx2, 2.0 * oy / ry2
        px, py = offset
        dx, dy = dirv
        C = q0 + gx * px + gy * py + (px * px) / rx2 + (py * py) / ry2
        B = gx * dx + gy * dy + 2.0 * (px * dx / rx2 + py * dy / ry2)
        A = (dx * dx) / rx2 + (dy * dy) / ry2
        disc = B * B - 4.0 * A * C
        if disc <= 0.0:
            raise LineMissesDomainError("line misses domain")
        sq = math.sqrt(disc)
        if B >= 0.0:
            qq = -0.5 * (B + sq)
        else:
            qq = -0.5 * (B - sq)
        r1 = qq / A
        r2 = C / qq if qq != 0.0 else -B / (2.0 * A)
        return (min(r1, r2), max(r1, r2))

    def chord(self, line: HomLine) -> tuple[BoundaryPoint, BoundaryPoint]:
        # Base the parametric solve at the foot of the center on the line.
        t0 = -line.value_at(Point(self.cx, self.cy))
        foot = Point(self.cx + t0 * line.a, self.cy + t0 * line.b)
        dx, dy = line.direction()
        s_lo, s_hi = self.chord_line_params(foot, (0.0, 0.0), (dx, dy))
        out = []
        for s in (s_lo, s_hi):
            pt = Point(foot.x + s * dx, foot.y + s * dy)
            out.append(BoundaryPoint(pt, 0, self._param_of(pt)))
        return out[0], out[1]

    def curvature_at(self, b: BoundaryPoint) -> float:
        s = b.param * 2.0 * math.pi
        num = self.rx * self.ry
        den = (self.rx ** 2 * math.sin(s) ** 2 + self.ry ** 2 * math.cos(s) ** 2) ** 1.5
        return num / den


class GraphCapDomain(Domain):
    """Region between a convex graph chain and a horizontal cap segment.

    ``pieces`` are graph pieces ordered left to right whose union spans
    [x_left, x_right]; both chain endpoints lie at height ``cap_y`` and the
    cap closes the region above.  The two cap joints are corners (the chain
    is C2, the closure is not).
    """

    def __init__(self, pieces: Sequence[GraphPiece], cap_y: float):
        if not pieces:
            raise GeometryError("graph-cap domain needs at least one piece")
        self.pieces = list(pieces)
        self.cap_y = cap_y
        self.x_left = self.pieces[0].x0
        self.x_right = self.pieces[-1].x1
        self._scale = max(abs(self.x_left), abs(self.x_right), abs(cap_y))

    def validate(self) -> list[str]:
        out = []
        for i in range(len(self.pieces) - 1):
            a, b = self.pieces[i], self.pieces[i + 1]
            if a.x1 != b.x0:
                out.append(f"pieces {i} and {i+1} do not share an x endpoint")
                continue
            x = a.x1
            if abs(a.value(x) - b.value(x)) > 1e-9 * max(1.0, self._scale):
                out.append(f"value mismatch at joint x={x}")
            if abs(a.d1(x) - b.d1(x)) > 1e-9:
                out.append(f"slope mismatch at joint x={x}")
            if abs(a.d2(x) - b.d2(x)) > 1e-6:
                out.append(f"second-derivative mismatch at joint x={x}")
        for i, pc in enumerate(self.pieces):
            for k in range(33):
                x = pc.x0 + (pc.x1 - pc.x0) * k / 32
                if pc.d2(x) < -1e-10:
                    out.append(f"concave sample on piece {i} at x={x}")
                    break
        for x, name in ((self.x_left, "left"), (self.x_right, "right")):
            if abs(self.lower(x) - self.cap_y) > 1e-9 * max(1.0, self._scale):
                out.append(f"{name} chain endpoint does not reach the cap height")
        return out

    def lower(self, x: float) -> float:
        return self._piece_at(x).value(x)

    def _piece_at(self, x: float) -> GraphPiece:
        lo, hi = 0, len(self.pieces) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if x <= self.pieces[mid].x1:
                hi = mid
            else:
                lo = mid + 1
        return self.pieces[lo]

    def contains(self, p: Point) -> bool:
        tol = 1e-12 * max(1.0, self._scale)
        if not (self.x_left + tol < p.x < self.x_right - tol):
            return False
        return self.lower(p.x) + tol < p.y < self.cap_y - tol

    def _piece_crossings(self, origin: Point, offset, dirv) -> list[float]:
        ox, oy = origin.x, origin.y
        px, py = offset
        dx, dy = dirv
        roots: list[float] = []
        for pc in self.pieces:
            u0, u1 = pc.x0 - ox, pc.x1 - ox
            if dx == 0.0:
                if u0 <= px <= u1:
                    val = pc.value_from(ox, oy, px)
                    roots.append((val - py) / dy)
                continue
            s0, s1 = (u0 - px) / dx, (u1 - px) / dx
            if s0 > s1:
                s0, s1 = s1, s0
            fn = lambda s: (py + s * dy) - pc.value_from(ox, oy, px + s * dx)
            roots.extend(_scan_roots(fn, s0, s1, 32))
        # Cap segment.
        if dy != 0.0:
            s = ((self.cap_y - oy) - py) / dy
            x_here = ox + px + s * dx
            if self.x_left - 1e-12 <= x_here <= self.x_right + 1e-12:
                roots.append(s)
        return roots

    def chord_line_params(self, origin, offset, dirv, anchored=False):
        roots = _dedupe_sorted(self._piece_crossings(origin, offset, dirv),
                               1e-9 * self._scale)
        if len(roots) < 2:
            raise LineMissesDomainError("line misses domain")
        return roots[0], roots[-1]

    def chord(self, line: HomLine) -> tuple[BoundaryPoint, BoundaryPoint]:
        dx, dy = line.direction()
        anchor = Point(-line.c * line.a, -line.c * line.b)  # foot of origin
        s_lo, s_hi = self.chord_line_params(anchor, (0.0, 0.0), (dx, dy))
        out = []
        for s in (s_lo, s_hi):
            pt = Point(anchor.x + s * dx, anchor.y + s * dy)
            out.append(BoundaryPoint(pt, self._piece_index_for(pt), pt.x))
        return out[0], out[1]

    def _piece_index_for(self, pt: Point) -> int:
        if abs(pt.y - self.cap_y) <= 1e-9 * max(1.0, self._scale) and not (
                abs(pt.x - self.x_left) < 1e-12 or abs(pt.x - self.x_right) < 1e-12):
            return len(self.pieces)  # the cap
        lo, hi = 0, len(self.pieces) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if pt.x <= self.pieces[mid].x1:
                hi = mid
            else:
                lo = mid + 1
        return lo

    def curvature_at(self, b: BoundaryPoint) -> float:
        if b.piece >= len(self.pieces):
            return 0.0  # cap segment
        pc = self.pieces[b.piece]
        x = b.param
        if (abs(x - self.x_left) < 1e-12 or abs(x - self.x_right) < 1e-12):
            raise NotC2Error("not C2 here: cap corner")
        d1, d2 = pc.d1(x), pc.d2(x)
        return abs(d2) / (1.0 + d1 * d1) ** 1.5

    def support_line_at(self, b: BoundaryPoint) -> HomLine:
        if b.piece >= len(self.pieces):
            return HomLine(0.0, 1.0, -self.cap_y)
        pc = self.pieces[b.piece]
        m = pc.d1(b.param)
        y = pc.value(b.param)
        return HomLine(m, -1.0, y - m * b.param)

    def boundary_samples(self, n: int) -> list[Point]:
        out = []
        per = max(2, n // (len(self.pieces) + 1))
        for pc in self.pieces:
            for k in range(per):
                x = pc.x0 + (pc.x1 - pc.x0) * k / per
                out.append(Point(x, pc.value(x)))
        for k in range(per):
            x = self.x_right + (self.x_left - self.x_right) * k / per
            out.append(Point(x, self.cap_y))
        return out

    def to_json(self) -> dict:
        pieces = [pc.to_json() for pc in self.pieces]
        pieces.append({"kind": "segment",
                       "from": [self.x_right, self.cap_y],
                       "to": [self.x_left, self.cap_y],
                       "corner": True})
        return {"type": "piecewise", "pieces": pieces}


def cubic_cap_domain(half_width: float = 1.0) -> GraphCapDomain:
    """The domain { (x, y) : |x|^3 < y < w^3, |x| < w }."""
    if half_width <= 0:
        raise GeometryError("half_width must be positive")
    w = half_width
    return GraphCapDomain([CubicAbsPiece(-w, 0.0), CubicAbsPiece(0.0, w)], w ** 3)


class TransformedDomain(Domain):
    """Projective image of a base domain, queried by pulling back through the map."""

    def __init__(self, base: Domain, m: ProjectiveMap):
        self.base = base
        self.m = m
        self.m_inv = m.inverse()

    def validate(self) -> list[str]:
        return self.base.validate()

    def contains(self, p: Point) -> bool:
        try:
            return self.base.contains(apply_map(self.m_inv, p))
        except GeometryError:
            return False

    def chord(self, line: HomLine) -> tuple[BoundaryPoint, BoundaryPoint]:
        from .projective import transform_line
        back = transform_line(self.m_inv, line)
        b1, b2 = self.base.chord(back)
        dx, dy = line.direction()
        imgs = []
        for bp in (b1, b2):
            pt = apply_map(self.m, bp.point)
            imgs.append((pt.x * dx + pt.y * dy, BoundaryPoint(pt, bp.piece, bp.param)))
        imgs.sort(key=lambda c: c[0])
        return imgs[0][1], imgs[1][1]

    def curvature_at(self, b: BoundaryPoint) -> float:
        # Differentiate the composed boundary parametrization via the
        # quotient rule on homogeneous coordinates.
        base_bp = BoundaryPoint(apply_map(self.m_inv, b.point), b.piece, b.param)
        pos, d1, d2 = self._base_derivs(base_bp)
        M = self.m.m
        N = M @ (pos[0], pos[1], 1.0)
        N1 = M @ (d1[0], d1[1], 0.0)
        N2 = M @ (d2[0], d2[1], 0.0)
        w, w1, w2 = N[2], N1[2], N2[2]
        out1, out2 = [], []
        for i in range(2):
            u1 = (N1[i] * w - N[i] * w1) / w ** 2
            u2 = ((N2[i] * w - N[i] * w2) * w - 2.0 * w1 * (N1[i] * w - N[i] * w1)) / w ** 3
            out1.append(u1)
            out2.append(u2)
        speed = math.hypot(out1[0], out1[1])
        return abs(out1[0] * out2[1] - out1[1] * out2[0]) / speed ** 3

    def _base_derivs(self, bp: BoundaryPoint):
        base = self.base
        if isinstance(base, SmoothDomain):
            return base.pos(bp.param), base.d1(bp.param), base.d2(bp.param)
        if isinstance(base, GraphCapDomain) and bp.piece < len(base.pieces):
            pc = base.pieces[bp.piece]
            x = bp.param
            return (x, pc.value(x)), (1.0, pc.d1(x)), (0.0, pc.d2(x))
        raise NotC2Error("not C2 here")

    def support_line_at(self, b: BoundaryPoint) -> HomLine:
        from .projective import transform_line
        back = BoundaryPoint(apply_map(self.m_inv, b.point), b.piece, b.param)
        return transform_line(self.m, self.base.support_line_at(back))

    def boundary_samples(self, n: int) -> list[Point]:
        return [apply_map(self.m, p) for p in self.base.boundary_samples(n)]


def transform_domain(m: ProjectiveMap, domain: Domain) -> Domain:
    """Projective image of a domain; errors out if the image is unbounded."""
    for p in domain.boundary_samples(256):
        _, _, w = m.homogeneous(p)
        if abs(w) < 1e-10:
            raise UnboundedImageError("unbounded image: boundary meets the vanishing line")
    if m.is_identity():
        return domain
    if isinstance(domain, PolygonDomain):
        verts = [apply_map(m, v) for v in domain.vertices]
        area2 = sum(verts[i].x * verts[(i + 1) % len(verts)].y
                    - verts[(i + 1) % len(verts)].x * verts[i].y
                    for i in range(len(verts)))
        if area2 < 0.0:
            verts.reverse()
        return PolygonDomain(verts).ensure_valid()
    return TransformedDomain(domain, m)


def validate(domain: Domain) -> list[str]:
    return domain.validate()


def contains(domain: Domain, p: Point) -> bool:
    return domain.contains(p)


def chord(domain: Domain, line: HomLine) -> tuple[BoundaryPoint, BoundaryPoint]:
    return domain.chord(line)


def curvature_at(domain: Domain, b: BoundaryPoint) -> float:
    return domain.curvature_at(b)
