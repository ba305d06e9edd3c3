"""Asymptotic geodesic pairs: synchronization, profiles, convexity reports.

Distance profiles of pairs sharing a forward endpoint xi are evaluated in
coordinates anchored at xi: the two sample points enter as exact offsets
``gap(t) * (a - xi)`` and the boundary crossings are solved by the
domain's anchored chord routine.  This keeps D(t) accurate to ~1e-14
absolute even when the points sit 1e-11 from the boundary, which is what
second-difference certification at tol 1e-9 on a delta = 0.05 grid needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .domains import BoundaryPoint, Domain, PolygonDomain
from .errors import GeometryError, NotAsymptoticError, SolverError, SupportLineError
from .metric import GeodesicLine, hilbert_distance
from .projective import (
    HomLine,
    Point,
    ProjectiveMap,
    apply_map,
    dist,
    intersect,
    join,
    map_offset,
)

SQRT3 = math.sqrt(3.0)


def logistic_gap(t: float) -> float:
    """E(t) = 1/(e^t + 1), evaluated without overflow on either tail."""
    if t >= 0.0:
        w = math.exp(-t)
        return w / (1.0 + w)
    return 1.0 / (math.exp(t) + 1.0)


def logistic_gap_d1(t: float) -> float:
    e = logistic_gap(t)
    return -e * (1.0 - e)


def logistic_gap_d2(t: float) -> float:
    e = logistic_gap(t)
    return e * (1.0 - e) * (1.0 - 2.0 * e)


def _cross(u: Sequence[float], v: Sequence[float]) -> float:
    return u[0] * v[1] - u[1] * v[0]


@dataclass(frozen=True)
class SyncFrame:
    """Normalization data for the parallel-line reparametrization."""

    map: Optional[ProjectiveMap]        # None when the support line is already parallel to L
    map_inv: Optional[ProjectiveMap]
    xi_mapped: Point
    rf_mapped: tuple[float, float]      # f(-inf) - xi in the working frame
    l_dir: tuple[float, float]          # direction of L in the working frame
    xi_orig: Point


class GeodesicPair:
    """Two geodesics sampled together; asymptotic pairs get the stable path."""

    def __init__(self, domain: Domain, f: GeodesicLine, g: GeodesicLine,
                 sync: Optional[SyncFrame] = None):
        self.domain = domain
        self.f = f
        self.g = g
        self.sync = sync
        self.xi: Optional[BoundaryPoint] = None
        if dist(f.b.point, g.b.point) < 1e-10:
            if dist(f.a.point, g.a.point) < 1e-10:
                raise GeometryError("Im f = Im g: the two geodesics share their chord")
            self.xi = f.b
            self._rf = (f.a.point.x - self.xi.point.x, f.a.point.y - self.xi.point.y)
            self._rg = (g.a.point.x - self.xi.point.x, g.a.point.y - self.xi.point.y)

    # -- sample positions ------------------------------------------------

    def g_offset(self, t: float) -> tuple[float, float]:
        gp = self.g.gap_fraction(t)
        return (gp * self._rg[0], gp * self._rg[1])

    def f_offset(self, t: float) -> tuple[float, float]:
        if self.sync is None:
            gp = self.f.gap_fraction(t)
            return (gp * self._rf[0], gp * self._rf[1])
        fr = self.sync
        q = self.g_offset(t)
        if fr.map is not None:
            q = map_offset(fr.map, self.xi.point, fr.xi_mapped, q)
        denom = _cross(fr.rf_mapped, fr.l_dir)
        gap = _cross(q, fr.l_dir) / denom
        p = (gap * fr.rf_mapped[0], gap * fr.rf_mapped[1])
        if fr.map is not None:
            p = map_offset(fr.map_inv, fr.xi_mapped, self.xi.point, p)
        return p

    def f_at(self, t: float) -> Point:
        if self.xi is None:
            return self.f.point_at(t)
        px, py = self.f_offset(t)
        return Point(self.xi.point.x + px, self.xi.point.y + py)

    def g_at(self, t: float) -> Point:
        return self.g.point_at(t)

    def sync_gap_fraction(self, t: float) -> float:
        """Normalized gap of the (re)parametrized f along its own chord."""
        px, py = self.f_offset(t)
        return math.hypot(px, py) / math.hypot(*self._rf)

    # -- distances ---------------------------------------------------------

    def distance_at(self, t: float) -> float:
        if self.xi is None:
            return hilbert_distance(self.domain, self.f.point_at(t), self.g.point_at(t))
        p = self.f_offset(t)
        q = self.g_offset(t)
        dx, dy = q[0] - p[0], q[1] - p[1]
        sep = math.hypot(dx, dy)
        if sep == 0.0:
            return 0.0
        ux, uy = dx / sep, dy / sep
        s_lo, s_hi = self.domain.chord_line_params(self.xi.point, p, (ux, uy),
                                                   anchored=True)
        if not (s_lo < 0.0 < sep < s_hi):
            raise GeometryError(f"chord does not bracket the pair at t={t}")
        ratio = ((sep - s_lo) * s_hi) / ((-s_lo) * (s_hi - sep))
        return math.log(ratio)


def synchronize(domain: Domain, f: GeodesicLine, g: GeodesicLine,
                support_line: Optional[HomLine] = None,
                check: bool = True) -> GeodesicPair:
    """Reparametrize f so f(t) and g(t) ride a family of lines parallel to L.

    L is the line through the two backward endpoints.  When the support
    line at xi is not parallel to L, everything is first pushed through a
    projective map sending their intersection to infinity; the map is
    recorded on the returned pair and sampling pulls the construction back,
    so distances are still evaluated in the original domain.
    """
    if dist(f.b.point, g.b.point) >= 1e-10:
        raise NotAsymptoticError("not asymptotic: forward endpoints differ")
    xi = f.b
    ell = support_line if support_line is not None else domain.support_line_at(xi)
    L = join(f.a.point, g.a.point)
    sin_angle = abs(ell.a * L.b - ell.b * L.a)
    if sin_angle < 1e-12:
        frame = SyncFrame(None, None, xi.point,
                          (f.a.point.x - xi.point.x, f.a.point.y - xi.point.y),
                          L.direction(), xi.point)
    else:
        A = intersect(ell, L)
        if A is None:
            raise SolverError("support line and L reported non-parallel but do not meet")
        m = _map_sending_to_infinity(domain, A)
        xi_m = apply_map(m, xi.point)
        af_m = apply_map(m, f.a.point)
        ag_m = apply_map(m, g.a.point)
        ldx, ldy = ag_m.x - af_m.x, ag_m.y - af_m.y
        n = math.hypot(ldx, ldy)
        frame = SyncFrame(m, m.inverse(), xi_m,
                          (af_m.x - xi_m.x, af_m.y - xi_m.y),
                          (ldx / n, ldy / n), xi.point)
    pair = GeodesicPair(domain, f, g, sync=frame)
    if check:
        g0 = pair.sync_gap_fraction(0.0)
        for t in (1.0, 3.0, 7.0):
            gt = pair.sync_gap_fraction(t)
            h = abs(math.log((g0 * (1.0 - gt)) / (gt * (1.0 - g0))))
            if abs(h - t) > 1e-8:
                raise SolverError(f"synchronized parametrization failed arc-length check at t={t}: h={h}")
    return pair


def _map_sending_to_infinity(domain: Domain, A: Point) -> ProjectiveMap:
    """A projective map whose vanishing line passes through A but misses the domain."""
    samples = domain.boundary_samples(256)
    angles = sorted((math.atan2(s.y - A.y, s.x - A.x)) % math.pi for s in samples)
    best_gap, best_phi = -1.0, 0.0
    for i in range(len(angles)):
        nxt = angles[(i + 1) % len(angles)]
        gap = (nxt - angles[i]) % math.pi
        if gap > best_gap:
            best_gap = gap
            best_phi = (angles[i] + gap / 2.0) % math.pi
    if best_gap <= 1e-6:
        raise SolverError("no direction through the intersection point avoids the domain")
    nx, ny = -math.sin(best_phi), math.cos(best_phi)
    v = (nx, ny, -(nx * A.x + ny * A.y))
    rows = [(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)]
    best = None
    for i in range(3):
        for j in range(i + 1, 3):
            mat = np.array([rows[i], rows[j], v])
            d = abs(np.linalg.det(mat))
            if best is None or d > best[0]:
                best = (d, mat)
    return ProjectiveMap(best[1])


@dataclass(frozen=True)
class DistanceProfile:
    ts: np.ndarray
    values: np.ndarray

    @property
    def delta(self) -> float:
        return float(self.ts[1] - self.ts[0])

    def second_differences(self) -> np.ndarray:
        d = self.delta
        v = self.values
        return (v[:-2] - 2.0 * v[1:-1] + v[2:]) / (d * d)


def distance_profile(domain: Domain, pair: GeodesicPair, t0: float, t1: float,
                     n: int) -> DistanceProfile:
    if not (t0 < t1 and n >= 3):
        raise GeometryError("profile needs t0 < t1 and n >= 3")
    ts = np.array([t0 + (t1 - t0) * i / (n - 1) for i in range(n)])
    vals = np.array([pair.distance_at(float(t)) for t in ts])
    return DistanceProfile(ts, vals)


@dataclass(frozen=True)
class ConvexityReport:
    t_certified: Optional[float]
    min_second_difference: Optional[float]
    negative_windows: list[tuple[float, float, float]]
    delta: float
    tol: float

    def to_dict(self) -> dict:
        return {
            "T_certified": self.t_certified,
            "min_second_difference": self.min_second_difference,
            "negative_windows": [
                {"t_start": a, "t_end": b, "min_value": m}
                for a, b, m in self.negative_windows
            ],
            "delta": self.delta,
            "tol": self.tol,
        }


def convexity_report(profile: DistanceProfile, tol: float = 1e-9) -> ConvexityReport:
    """Certify convexity of the sampled profile by central second differences.

    T_certified is the earliest grid point from which every central second
    difference stays >= -tol; it is "none" exactly when the final interior
    sample is still below -tol.
    """
    if len(profile.ts) < 3:
        raise GeometryError("profile must have at least 3 points")
    sd = profile.second_differences()
    ts = profile.ts
    bad = np.flatnonzero(sd < -tol)
    windows: list[tuple[float, float, float]] = []
    if bad.size:
        start = prev = bad[0]
        for i in list(bad[1:]) + [None]:
            if i is not None and i == prev + 1:
                prev = i
                continue
            seg = sd[start:prev + 1]
            windows.append((float(ts[start + 1]), float(ts[prev + 1]), float(seg.min())))
            if i is not None:
                start = prev = i
    if bad.size == 0:
        t_cert = float(ts[0])
        tail_min = float(sd.min())
    elif bad[-1] == len(sd) - 1:
        t_cert = None
        tail_min = None
    else:
        t_cert = float(ts[bad[-1] + 2])
        tail_min = float(sd[bad[-1] + 1:].min())
    return ConvexityReport(t_cert, tail_min, windows, profile.delta, tol)


@dataclass(frozen=True)
class LimitEstimate:
    value: float
    cauchy: bool
    oscillation: float


def limit_estimate(profile: DistanceProfile) -> LimitEstimate:
    """Tail average over the last 10% of samples, with a Cauchy-decay flag."""
    k = max(2, len(profile.values) // 10)
    tail = profile.values[-k:]
    osc = float(tail.max() - tail.min())
    return LimitEstimate(float(tail.mean()), osc < 1e-6, osc)


@dataclass(frozen=True)
class PhiParams:
    alpha: float
    beta: float

    def __post_init__(self):
        if not self.beta > 0.0:
            raise GeometryError("beta must be positive")


def _phi_denominators(params: PhiParams, t: float) -> tuple[float, float, float]:
    e = logistic_gap(t)
    d_plus = params.beta + (params.alpha + 0.5) * e
    d_minus = params.beta + (params.alpha - 0.5) * e
    if d_plus <= 0.0 or d_minus <= 0.0:
        raise GeometryError("denominator nonpositive")
    return e, d_plus, d_minus


def phi_value(params: PhiParams, t: float) -> float:
    _, d_plus, d_minus = _phi_denominators(params, t)
    return math.log(d_plus / d_minus)


def phi_second(params: PhiParams, t: float) -> float:
    """Closed-form second derivative via the three-summand numerator.

    The numerator is beta [D+ D- E'' - (E')^2 ((a+1/2) D- + (a-1/2) D+)];
    its dominant summand for large t is beta^3 E''(t), which is positive,
    so the function turns convex beyond some finite T.
    """
    e, d_plus, d_minus = _phi_denominators(params, t)
    e1 = -e * (1.0 - e)
    e2 = e * (1.0 - e) * (1.0 - 2.0 * e)
    a = params.alpha
    num = params.beta * (
        d_plus * d_minus * e2
        - e1 * (a + 0.5) * e1 * d_minus
        - e1 * (a - 0.5) * e1 * d_plus
    )
    return num / (d_plus * d_plus * d_minus * d_minus)


def example1_profile(t: float) -> float:
    """Distance of the two vertical geodesics in the slanted trapezoid."""
    e = logistic_gap(t)
    return 2.0 * math.log((2.0 + e) / (1.0 + e))


def example2_profile(t: float) -> float:
    """Distance of the two diagonal geodesics crossing at the trapezoid center."""
    e = logistic_gap(t)
    return 2.0 * math.log(2.0 / (1.0 + 2.0 * e))


def thm1a_case1_profile(t: float, alpha: float, beta: float, alpha_prime: float) -> float:
    """Polygon Case-I closed form: a logistic log-ratio plus a constant.

    The second summand is log A' with A' = (a' sqrt3/2 + 1/2)/(a' sqrt3/2 - 1/2);
    the gap factors of the side through the corner cancel between numerator
    and denominator, leaving no t dependence.
    """
    if not alpha_prime > SQRT3 / 3.0:
        raise GeometryError("alpha_prime must exceed sqrt(3)/3")
    if not beta > 0.0:
        raise GeometryError("beta must be positive")
    e = logistic_gap(t)
    first = math.log(((alpha * SQRT3 / 2.0 + 0.5) * e + beta)
                     / ((alpha * SQRT3 / 2.0 - 0.5) * e + beta))
    a_prime = (alpha_prime * SQRT3 / 2.0 + 0.5) / (alpha_prime * SQRT3 / 2.0 - 0.5)
    return first + math.log(a_prime)


def closed_form_example(kind: str, t: float, **params) -> float:
    if kind == "example1":
        return example1_profile(t)
    if kind == "example2":
        return example2_profile(t)
    if kind == "thm1a_case1":
        return thm1a_case1_profile(t, params["alpha"], params["beta"], params["alpha_prime"])
    raise GeometryError(f"unknown closed form {kind!r}")


def wedge_pencil_distance(f_dir: Sequence[float], g_dir: Sequence[float],
                          l1_dir: Sequence[float], l2_dir: Sequence[float]) -> float:
    """Hilbert distance in the wedge spanned by two support rays at xi.

    For points moving along fixed rays at proportional speeds the chord
    cross ratio equals the cross ratio of the four concurrent lines, i.e. a
    ratio of sines of the angles at the apex; it is scale invariant, so it
    bounds the pair distance from below uniformly in t.
    """
    def unit(v):
        n = math.hypot(v[0], v[1])
        return (v[0] / n, v[1] / n)

    f, g, l1, l2 = unit(f_dir), unit(g_dir), unit(l1_dir), unit(l2_dir)
    s = lambda u, v: abs(_cross(u, v))
    return math.log((s(l1, g) * s(l2, f)) / (s(l1, f) * s(l2, g)))


def vertex_lower_bound_check(domain: PolygonDomain, pair: GeodesicPair,
                             t_max: float, n: int = 301) -> float:
    """Minimum sampled distance of a pair asymptotic into a polygon vertex."""
    if pair.xi is None:
        raise GeometryError("pair is not asymptotic")
    if not isinstance(domain, PolygonDomain) or domain.vertex_index_near(pair.xi.point) is None:
        raise GeometryError("xi not a vertex")
    prof = distance_profile(domain, pair, 0.0, t_max, n)
    return float(prof.values.min())
