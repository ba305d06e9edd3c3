"""Boundary pieces for piecewise domains: segments and graph arcs.

Graph pieces are convex functions y = f(x) on an x-interval with exact
first- and second-derivative oracles.  Circular arcs of tiny curvature have
huge radii, so their values are evaluated as anchored differences (the
classic sagitta trick) instead of ``cy - sqrt(r^2 - (x-cx)^2)``, which would
cancel catastrophically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .projective import Point


class GraphPiece:
    """Convex function graph on [x0, x1]."""

    kind = "graph"

    def __init__(self, x0: float, x1: float):
        if not x0 < x1:
            raise ValueError(f"empty graph interval [{x0}, {x1}]")
        self.x0 = x0
        self.x1 = x1

    def value(self, x: float) -> float:
        raise NotImplementedError

    def d1(self, x: float) -> float:
        raise NotImplementedError

    def d2(self, x: float) -> float:
        raise NotImplementedError

    def value_from(self, ox: float, oy: float, u: float) -> float:
        """f(ox + u) - oy; subclasses override when a stabler form exists."""
        return self.value(ox + u) - oy

    def start(self) -> Point:
        return Point(self.x0, self.value(self.x0))

    def end(self) -> Point:
        return Point(self.x1, self.value(self.x1))

    def to_json(self) -> dict:
        raise NotImplementedError


class CubicAbsPiece(GraphPiece):
    """y = |x|^3 restricted to an interval not straddling 0."""

    def __init__(self, x0: float, x1: float):
        super().__init__(x0, x1)
        if x0 < 0.0 < x1:
            raise ValueError("cubic piece must not straddle x = 0; split it there")

    def value(self, x: float) -> float:
        return abs(x) ** 3

    def d1(self, x: float) -> float:
        return 3.0 * x * abs(x)

    def d2(self, x: float) -> float:
        return 6.0 * abs(x)

    def value_from(self, ox: float, oy: float, u: float) -> float:
        # |x|^3 expanded about ox keeps every term at local scale.  The
        # branch follows the piece's side of x = 0, not the sign of ox.
        if self.x1 <= 0.0:
            return (-ox * ox * ox - oy) - u * (3.0 * ox * ox + u * (3.0 * ox + u))
        return (ox * ox * ox - oy) + u * (3.0 * ox * ox + u * (3.0 * ox + u))

    def to_json(self) -> dict:
        return {"kind": "arc", "interval": [self.x0, self.x1], "model": "cubic", "params": {}}


class CircularArcPiece(GraphPiece):
    """Lower branch of a circle, anchored at one endpoint for stable values.

    ``y(x) = y_anchor + (x - xa)(x + xa - 2 cx) / (s(xa) + s(x))`` with
    ``s(x) = sqrt(r^2 - (x - cx)^2)``; every factor stays at the local scale
    even when r is astronomically large.
    """

    def __init__(self, x0: float, x1: float, cx: float, cy: float, r: float,
                 x_anchor: float, y_anchor: float):
        super().__init__(x0, x1)
        self.cx = cx
        self.cy = cy
        self.r = r
        self.x_anchor = x_anchor
        self.y_anchor = y_anchor

    def _s(self, x: float) -> float:
        dx = x - self.cx
        return math.sqrt(self.r * self.r - dx * dx)

    def value(self, x: float) -> float:
        num = (x - self.x_anchor) * ((x - self.cx) + (self.x_anchor - self.cx))
        return self.y_anchor + num / (self._s(self.x_anchor) + self._s(x))

    def d1(self, x: float) -> float:
        return (x - self.cx) / self._s(x)

    def d2(self, x: float) -> float:
        s = self._s(x)
        return self.r * self.r / (s * s * s)

    def curvature(self) -> float:
        return 1.0 / self.r

    def to_json(self) -> dict:
        return {
            "kind": "arc",
            "interval": [self.x0, self.x1],
            "model": "constant-curvature",
            "params": {"cx": self.cx, "cy": self.cy, "r": self.r,
                       "x_anchor": self.x_anchor, "y_anchor": self.y_anchor},
        }


# Monomial coefficients of the quintic Hermite basis on [0, 1], one row per
# datum (y0, d0, s0, y1, d1, s1), columns u^0 .. u^5.
_QUINTIC_BASIS = (
    (1.0, 0.0, 0.0, -10.0, 15.0, -6.0),
    (0.0, 1.0, 0.0, -6.0, 8.0, -3.0),
    (0.0, 0.0, 0.5, -1.5, 1.5, -0.5),
    (0.0, 0.0, 0.0, 10.0, -15.0, 6.0),
    (0.0, 0.0, 0.0, -4.0, 7.0, -3.0),
    (0.0, 0.0, 0.0, 0.5, -1.0, 0.5),
)


class QuinticHermitePiece(GraphPiece):
    """Quintic matching value, slope and second derivative at both ends."""

    def __init__(self, x0: float, x1: float, y0: float, d0: float, s0: float,
                 y1: float, d1: float, s1: float):
        super().__init__(x0, x1)
        self.data = (y0, d0, s0, y1, d1, s1)
        h = x1 - x0
        scaled = (y0, d0 * h, s0 * h * h, y1, d1 * h, s1 * h * h)
        self.coeffs = [sum(scaled[i] * _QUINTIC_BASIS[i][k] for i in range(6))
                       for k in range(6)]
        self.h = h

    def _u(self, x: float) -> float:
        return (x - self.x0) / self.h

    def value(self, x: float) -> float:
        u = self._u(x)
        acc = 0.0
        for ck in reversed(self.coeffs):
            acc = acc * u + ck
        return acc

    def d1(self, x: float) -> float:
        u = self._u(x)
        acc = 0.0
        for k in range(5, 0, -1):
            acc = acc * u + k * self.coeffs[k]
        return acc / self.h

    def d2(self, x: float) -> float:
        u = self._u(x)
        acc = 0.0
        for k in range(5, 1, -1):
            acc = acc * u + k * (k - 1) * self.coeffs[k]
        return acc / (self.h * self.h)

    def to_json(self) -> dict:
        y0, d0, s0, y1, d1, s1 = self.data
        return {
            "kind": "arc",
            "interval": [self.x0, self.x1],
            "model": "hermite-quintic",
            "params": {"y0": y0, "d0": d0, "dd0": s0, "y1": y1, "d1": d1, "dd1": s1},
        }


@dataclass(frozen=True)
class SegmentPiece:
    """Straight boundary segment between two points."""

    p0: Point
    p1: Point
    kind = "segment"

    def at(self, u: float) -> Point:
        return Point(self.p0.x + u * (self.p1.x - self.p0.x),
                     self.p0.y + u * (self.p1.y - self.p0.y))

    def start(self) -> Point:
        return self.p0

    def end(self) -> Point:
        return self.p1

    def direction(self) -> tuple[float, float]:
        dx, dy = self.p1.x - self.p0.x, self.p1.y - self.p0.y
        n = math.hypot(dx, dy)
        return (dx / n, dy / n)

    def to_json(self) -> dict:
        return {"kind": "segment", "from": [self.p0.x, self.p0.y],
                "to": [self.p1.x, self.p1.y]}


def piece_from_json(obj: dict):
    kind = obj["kind"]
    if kind == "segment":
        return SegmentPiece(Point(*obj["from"]), Point(*obj["to"]))
    if kind != "arc":
        raise ValueError(f"unknown piece kind {kind!r}")
    x0, x1 = obj["interval"]
    model = obj["model"]
    params = obj.get("params", {})
    if model == "cubic":
        return CubicAbsPiece(x0, x1)
    if model == "constant-curvature":
        return CircularArcPiece(x0, x1, params["cx"], params["cy"], params["r"],
                                params["x_anchor"], params["y_anchor"])
    if model == "hermite-quintic":
        return QuinticHermitePiece(x0, x1, params["y0"], params["d0"], params["dd0"],
                                   params["y1"], params["d1"], params["dd1"])
    raise ValueError(f"unknown arc model {model!r}")
