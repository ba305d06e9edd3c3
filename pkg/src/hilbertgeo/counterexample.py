"""Builder for the zero-curvature counterexample domain and its certificates.

The lower boundary starts from y = |x|^3, whose distance profile for the
diagonal geodesic pair is eventually convex.  Around each contact abscissa
x_n = x0 / 4^n the cubic subarc between (b_n, b_n^3) and (x_n, x_n^3) is
replaced by a circular arc of tiny curvature hugging the secant
y = 2 x_n^2 x - x_n^3, and consecutive arcs are joined by convex C2
interpolants, so the curve stays C2 with curvature vanishing only at the
origin while the profile second derivative dips negative near every
contact time t_n = log(c / x_n^3 - 1).

The dips are O(x_n^5) deep and O(x_n^3) wide, far below what float64
sampling of D(t) can resolve beyond the first level, so the certificate
evaluation re-runs the exact construction in mpmath.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import mpmath as mp

from .domains import GraphCapDomain
from .errors import DegenerateChordError, GeometryError, InfeasibleDataError, SolverError
from .pieces import CircularArcPiece, CubicAbsPiece, QuinticHermitePiece

GOLDEN_FACTOR = (math.sqrt(5.0) - 1.0) / 2.0
SAGITTA_CAP_FRACTION = 1e-4   # arc-to-secant gap stays below 1e-4 x_n^3


# ---------------------------------------------------------------------------
# closed-form level quantities


def flat_segment_endpoint(xn: float) -> float:
    """Left endpoint b of the secant segment: the root of b^3 = 2 xn^2 b - xn^3.

    The cubic factors as (b - xn)(b^2 + xn b - xn^2), so b = xn (sqrt5 - 1)/2,
    which always lies in (xn/2, 3 xn/4).
    """
    if not xn > 0.0:
        raise GeometryError("xn must be positive")
    return xn * GOLDEN_FACTOR


@dataclass(frozen=True)
class ContactCurvature:
    """Second-derivative product at the contact time plus its positive scale."""

    d2_times_c: float
    c_factor: float


def d2_at_contact(x0: float, c: float) -> ContactCurvature:
    """D''(t0) * C = -(2/c) x0^7 + 2 x0^8 at the contact with the secant.

    Negative exactly when x0 < 1/c.  The positive scale factor C is
    evaluated with A = 2 x0^2, B = -x0^3, y = x0^3; its positivity needs
    y < c, which is asserted here rather than assumed.
    """
    if not (0.0 < x0 < 1.0 and c > 0.0):
        raise GeometryError("need 0 < x0 < 1 and c > 0")
    if not x0 ** 3 < c:
        raise GeometryError("contact height must stay below c for the scale factor")
    a = 2.0 * x0 ** 2
    b = -(x0 ** 3)
    y = x0 ** 3
    x = x0
    c_factor = (a * a * (x * x - y * y) ** 2) / (-4.0 * b * (-(y * y) / c + y))
    if not c_factor > 0.0:
        raise GeometryError("scale factor failed its positivity certificate")
    return ContactCurvature(-(2.0 / c) * x0 ** 7 + 2.0 * x0 ** 8, c_factor)


@dataclass(frozen=True)
class ProfileDerivatives:
    d1: float
    d2_times_c: float
    c_factor: float


def d_profile_derivatives(a: float, b: float, c: float, t: float) -> ProfileDerivatives:
    """Closed-form D' and D'' C for the secant-boundary profile.

    The boundary crossing rides the line y = a x + b, y(t) = c/(e^t + 1),
    and D(t) = 2 log((x+y)/(x-y)).
    """
    if not (0.0 < a < 1.0 and b < 0.0 and c > 0.0):
        raise GeometryError("need a in (0,1), b < 0, c > 0")
    y = c / (math.exp(t) + 1.0)
    x = (y - b) / a
    if not x > y > 0.0:
        raise DegenerateChordError("degenerate chord: need x > y > 0")
    d1 = 4.0 * (a * x - y) / (x * x - y * y) / a * (y * y / c - y)
    d2c = 2.0 * (a * y - x) * (-(y * y) / c + y) + (x * x - y * y) * (-2.0 * y * a / c + a)
    c_factor = (a * a * (x * x - y * y) ** 2) / (-4.0 * b * (-(y * y) / c + y))
    return ProfileDerivatives(d1, d2c, c_factor)


# ---------------------------------------------------------------------------
# C2 interpolation between consecutive arcs


@dataclass(frozen=True)
class InterpolationData:
    x_left: float
    x_right: float
    value_left: float
    slope_left: float
    second_left: float
    value_right: float
    slope_right: float
    second_right: float

    @property
    def width(self) -> float:
        return self.x_right - self.x_left

    @property
    def rise(self) -> float:
        return self.value_right - self.value_left


@dataclass(frozen=True)
class Feasibility:
    ok: bool
    left_margin: float
    right_margin: float


def feasibility_check(data: InterpolationData) -> Feasibility:
    """Check the sandwich slope_left * w < rise < slope_right * w with margins."""
    left = data.rise - data.slope_left * data.width
    right = data.slope_right * data.width - data.rise
    basic = (0.0 < data.value_left < data.value_right
             and 0.0 < data.slope_left < data.slope_right)
    return Feasibility(basic and left > 0.0 and right > 0.0, left, right)


def worst_case_feasibility_fractions() -> tuple[float, float, float, float]:
    """The scaled sufficient bounds for the first connector, in units of x0^3.

    With b only known to lie in (x0/2, 3 x0/4), the right inequality is
    checked at the extremes (26/64 < 1/2) and the left one at b = x0/2
    where its gap is smallest (1/32 < 7/64); both sides of the left check
    are increasing in b, so the endpoint dominates.
    """
    right_lhs = (3.0 / 4.0) ** 3 - (1.0 / 4.0) ** 3          # 26/64
    right_rhs = 2.0 * (1.0 / 2.0 - 1.0 / 4.0)                 # 1/2
    left_lhs = 2.0 * (1.0 / 4.0) ** 2 * (1.0 / 2.0 - 1.0 / 4.0)   # 1/32
    left_rhs = (1.0 / 2.0) ** 3 - (1.0 / 4.0) ** 3            # 7/64
    return left_lhs, left_rhs, right_lhs, right_rhs


def _interpolant_record(data):
    """Knot of the two-piece monotone blend of sigma', solved by bisection.

    sigma' is a C1 pair of cubic Hermite arcs joined at a knot whose height
    w is the free parameter; the knot abscissa rides the anti-diagonal
    m(w) = alpha + W (v_b - w)/(v_b - v_a), so the family's integral sweeps
    the whole open sandwich (W v_a, W v_b): w near v_a puts the knot late
    (a long flat run then a short rise), w near v_b puts it early.  The
    knot derivative is the harmonic mean of the two piece secants, which
    keeps both cubics strictly inside the monotonicity region when the
    pinned end derivatives are below three times their secants.
    """
    alpha, beta = data[0], data[1]
    v_a, d_a = data[3], data[4]
    v_b, d_b = data[6], data[7]
    width = beta - alpha
    target = data[5] - data[2]

    def family(rho):
        # rho in (0,1) is the knot position fraction; w rides the anti-diagonal.
        w = v_b - rho * (v_b - v_a)
        h1 = rho * width
        h2 = width - h1
        s1 = (w - v_a) / h1
        s2 = (v_b - w) / h2
        d_m = 2.0 * s1 * s2 / (s1 + s2)
        integral = (h1 * (v_a + w) / 2 + h1 * h1 * (d_a - d_m) / 12
                    + h2 * (w + v_b) / 2 + h2 * h2 * (d_m - d_b) / 12)
        return integral, alpha + h1, w, d_m

    n_scan = 128
    rhos = [(k + 0.5) / n_scan for k in range(n_scan)]
    vals = [family(r)[0] - target for r in rhos]
    lo = hi = None
    for i in range(n_scan - 1):
        if vals[i] == 0:
            lo = hi = rhos[i]
            break
        if (vals[i] > 0) != (vals[i + 1] > 0):
            lo, hi, flo = rhos[i], rhos[i + 1], vals[i]
            break
    if lo is None:
        raise SolverError("solver did not converge: no knot bracket for the integral")
    if lo != hi:
        for _ in range(300):
            midr = (lo + hi) / 2
            fm = family(midr)[0] - target
            if fm == 0:
                lo = hi = midr
                break
            if (fm > 0) == (flo > 0):
                lo, flo = midr, fm
            else:
                hi = midr
        lo = (lo + hi) / 2
    _, m, w, d_m = family(lo)
    sigma_mid = data[2] + (m - alpha) * (v_a + w) / 2 + (m - alpha) ** 2 * (d_a - d_m) / 12
    return m, w, d_m, sigma_mid


class C2Arc:
    """Convex C2 interpolant, realized as two quartic (degenerate quintic) halves."""

    def __init__(self, data: InterpolationData, pieces: Sequence[QuinticHermitePiece],
                 knot_slope: float):
        self.data = data
        self.pieces = list(pieces)
        self.knot_slope = knot_slope
        self.x_left = data.x_left
        self.x_right = data.x_right

    def _piece(self, x: float) -> QuinticHermitePiece:
        return self.pieces[0] if x <= self.pieces[0].x1 else self.pieces[1]

    def value(self, x: float) -> float:
        return self._piece(x).value(x)

    def d1(self, x: float) -> float:
        return self._piece(x).d1(x)

    def d2(self, x: float) -> float:
        return self._piece(x).d2(x)

    def integral_residual(self) -> float:
        """| sigma(beta) - sigma(alpha) - (rise) |, the Lemma's integral identity."""
        return abs(self.pieces[1].value(self.x_right) - self.data.value_left
                   - self.data.rise)


def c2_interpolant(data: InterpolationData, samples: int = 512) -> C2Arc:
    """Convex C2 function matching value, slope and second derivative at both ends."""
    feas = feasibility_check(data)
    if not feas.ok:
        raise InfeasibleDataError(
            f"infeasible data: margins {feas.left_margin:.3e}, {feas.right_margin:.3e}")
    if not (data.second_left > 0.0 and data.second_right > 0.0):
        raise InfeasibleDataError("endpoint second derivatives must be positive")
    tup = (data.x_left, data.x_right, data.value_left, data.slope_left,
           data.second_left, data.value_right, data.slope_right, data.second_right)
    mid, w, d_m, sigma_mid = _interpolant_record(tup)
    if not data.slope_left < w < data.slope_right:
        raise SolverError("solver did not converge: knot height left the slope bracket")
    half1 = QuinticHermitePiece(data.x_left, mid, data.value_left, data.slope_left,
                                data.second_left, sigma_mid, w, d_m)
    half2 = QuinticHermitePiece(mid, data.x_right, sigma_mid, w, d_m,
                                data.value_right, data.slope_right, data.second_right)
    arc = C2Arc(data, (half1, half2), w)
    for k in range(samples + 1):
        x = data.x_left + data.width * k / samples
        if data.x_left < x < data.x_right and arc.d2(x) <= 0.0:
            raise SolverError(f"solver did not converge: sigma'' <= 0 at x={x}")
    return arc


# ---------------------------------------------------------------------------
# domain construction


@dataclass(frozen=True)
class CounterexampleParams:
    x0: float = 0.25
    levels: int = 3
    c: float = 1.0
    kappas: Optional[tuple[float, ...]] = None
    outer_factor: float = 1.5

    def __post_init__(self):
        if not 0.0 < self.x0 < 1.0:
            raise GeometryError("x0 must lie in (0, 1)")
        if self.c <= 0.0 or self.x0 >= 1.0 / self.c:
            raise GeometryError("sign condition requires x0 < 1/c")
        if self.levels < 0:
            raise GeometryError("levels must be nonnegative")
        if self.kappas is not None:
            ks = self.kappas
            if len(ks) != self.levels + 1:
                raise GeometryError("kappa schedule must have levels + 1 entries")
            if any(k <= 0.0 for k in ks):
                raise GeometryError("arc curvatures must be positive (segments would break C2)")
            if any(ks[i + 1] >= ks[i] for i in range(len(ks) - 1)):
                raise GeometryError("kappa schedule must be strictly decreasing")

    def contact_time(self, n: int) -> float:
        xn = self.x0 / 4.0 ** n
        return math.log(self.c / xn ** 3 - 1.0)

    def x_outer(self) -> float:
        return min(self.outer_factor * self.x0, (1.0 + self.x0) / 2.0)


def effective_kappas(params: CounterexampleParams):
    """Requested or default curvature schedule, capped by the sagitta budget.

    Default kappa_n = x_n^4 / 4 keeps the curvature contribution to D''
    under a quarter of the contact dip; the cap keeps every arc within
    1e-4 x_n^3 of its secant.
    """
    out = []
    for n in range(params.levels + 1):
        xn = params.x0 / 4.0 ** n
        bn = flat_segment_endpoint(xn)
        chord_sq = (xn - bn) ** 2 * (1.0 + (2.0 * xn ** 2) ** 2)
        cap = 8.0 * SAGITTA_CAP_FRACTION * xn ** 3 / chord_sq
        want = params.kappas[n] if params.kappas is not None else xn ** 4 / 4.0
        out.append(min(want, cap))
    return out


def _build_half_records(params: CounterexampleParams, sq):
    """Right-half boundary records from the origin outward, backend-agnostic.

    ``sq`` is the square root of the number backend (math.sqrt or mp.sqrt);
    all other operations are field arithmetic, so running this on mpf
    inputs reproduces the construction exactly in arbitrary precision.
    """
    one = sq(1.0) * 0 + 1.0  # promotes to the backend's number type
    x0 = one * params.x0
    golden = (sq(one * 5.0) - 1.0) / 2.0
    kappas = [one * k for k in effective_kappas(params)]
    levels = params.levels

    def arc_record(n):
        xn = x0 / 4 ** n
        bn = xn * golden
        p1 = (bn, bn ** 3)
        p2 = (xn, xn ** 3)
        vx, vy = p2[0] - p1[0], p2[1] - p1[1]
        chord = sq(vx * vx + vy * vy)
        r = 1.0 / kappas[n]
        if not 2.0 * r > chord:
            raise GeometryError("arc curvature too large for its chord")
        h = sq(r * r - (chord / 2.0) ** 2)
        cx = (p1[0] + p2[0]) / 2.0 + h * (-vy / chord)
        cy = (p1[1] + p2[1]) / 2.0 + h * (vx / chord)
        return {"kind": "arc", "x0": p1[0], "x1": p2[0], "cx": cx, "cy": cy,
                "r": r, "xa": p1[0], "ya": p1[1]}

    def arc_value(rec, x):
        dx = x - rec["cx"]
        da = rec["xa"] - rec["cx"]
        s = sq(rec["r"] ** 2 - dx * dx)
        sa = sq(rec["r"] ** 2 - da * da)
        return rec["ya"] + (x - rec["xa"]) * (dx + da) / (s + sa)

    def arc_d1(rec, x):
        dx = x - rec["cx"]
        return dx / sq(rec["r"] ** 2 - dx * dx)

    def arc_d2(rec, x):
        dx = x - rec["cx"]
        s = sq(rec["r"] ** 2 - dx * dx)
        return rec["r"] ** 2 / (s * s * s)

    def add_connector(records, data, label):
        if not (data[3] * (data[1] - data[0]) < data[5] - data[2]
                < data[6] * (data[1] - data[0])):
            raise InfeasibleDataError(f"connector sandwich failed at {label}")
        mid, w, d_m, sigma_mid = _interpolant_record(data)
        records.append({"kind": "quintic", "x0": data[0], "x1": mid,
                        "data": (data[2], data[3], data[4], sigma_mid, w, d_m)})
        records.append({"kind": "quintic", "x0": mid, "x1": data[1],
                        "data": (sigma_mid, w, d_m, data[5], data[6], data[7])})

    arcs = [arc_record(n) for n in range(levels + 1)]
    records = []
    # Inner connector: the last arc's left slope is ~2 x_L^2 while the cubic
    # arrives at b_L with 3 b_L^2, so the stub ends one level further in.
    x_inner = x0 / 4 ** (levels + 1)
    b_last = (x0 / 4 ** levels) * golden
    records.append({"kind": "cubic", "x0": one * 0.0, "x1": x_inner})
    inner = (x_inner, b_last,
             x_inner ** 3, 3.0 * x_inner ** 2, 6.0 * x_inner,
             arc_value(arcs[levels], b_last), arc_d1(arcs[levels], b_last),
             arc_d2(arcs[levels], b_last))
    add_connector(records, inner, "inner joint")
    for n in range(levels, -1, -1):
        records.append(arcs[n])
        xn = x0 / 4 ** n
        if n > 0:
            alpha, beta = xn, (x0 / 4 ** (n - 1)) * golden
            nxt = arcs[n - 1]
            data = (alpha, beta,
                    arc_value(arcs[n], alpha), arc_d1(arcs[n], alpha), arc_d2(arcs[n], alpha),
                    arc_value(nxt, beta), arc_d1(nxt, beta), arc_d2(nxt, beta))
        else:
            beta = one * params.x_outer()
            data = (xn, beta,
                    arc_value(arcs[0], xn), arc_d1(arcs[0], xn), arc_d2(arcs[0], xn),
                    beta ** 3, 3.0 * beta ** 2, 6.0 * beta)
        add_connector(records, data, f"level {n}")
    records.append({"kind": "cubic", "x0": one * params.x_outer(), "x1": one * 1.0})
    return records


def _materialize(records) -> list:
    """Float GraphPiece objects for the right half, origin outward."""
    out = []
    for rec in records:
        if rec["kind"] == "cubic":
            out.append(CubicAbsPiece(float(rec["x0"]), float(rec["x1"])))
        elif rec["kind"] == "arc":
            out.append(CircularArcPiece(float(rec["x0"]), float(rec["x1"]),
                                        float(rec["cx"]), float(rec["cy"]),
                                        float(rec["r"]), float(rec["xa"]),
                                        float(rec["ya"])))
        else:
            y0, d0, s0, y1, d1, s1 = (float(v) for v in rec["data"])
            out.append(QuinticHermitePiece(float(rec["x0"]), float(rec["x1"]),
                                           y0, d0, s0, y1, d1, s1))
    return out


def _mirror(piece):
    if isinstance(piece, CubicAbsPiece):
        return CubicAbsPiece(-piece.x1, -piece.x0)
    if isinstance(piece, CircularArcPiece):
        return CircularArcPiece(-piece.x1, -piece.x0, -piece.cx, piece.cy, piece.r,
                                -piece.x_anchor, piece.y_anchor)
    y0, d0, s0, y1, d1, s1 = piece.data
    return QuinticHermitePiece(-piece.x1, -piece.x0, y1, -d1, s1, y0, -d0, s0)


def build_counterexample_domain(params: CounterexampleParams) -> GraphCapDomain:
    """Assemble the full C2 counterexample domain, mirrored and capped at y = 1."""
    right = _materialize(_build_half_records(params, math.sqrt))
    left = [_mirror(pc) for pc in reversed(right)]
    domain = GraphCapDomain(left + right, 1.0)
    errs = domain.validate()
    if errs:
        raise GeometryError("convexity violated: " + "; ".join(errs))
    return domain


def curvature_floors(domain: GraphCapDomain, params: CounterexampleParams,
                     samples_per_piece: int = 64) -> list[tuple[float, float, float]]:
    """(x_lo, x_hi, min curvature) per piece outside the innermost cubic stub."""
    inner = params.x0 / 4.0 ** (params.levels + 1)
    out = []
    for pc in domain.pieces:
        lo = max(pc.x0, -1.0)
        pts = [pc.x0 + (pc.x1 - pc.x0) * k / samples_per_piece
               for k in range(samples_per_piece + 1)]
        pts = [x for x in pts if abs(x) > inner]
        if not pts:
            continue
        kmin = min(abs(pc.d2(x)) / (1.0 + pc.d1(x) ** 2) ** 1.5 for x in pts)
        out.append((pc.x0, pc.x1, kmin))
    return out


# ---------------------------------------------------------------------------
# certificate: second-difference dips at every contact time


@dataclass(frozen=True)
class LevelWindow:
    level: int
    t_contact: float
    t_window: tuple[float, float]
    delta: float
    min_second_difference: float
    t_at_min: float

    @property
    def negative(self) -> bool:
        return self.min_second_difference < 0.0


@dataclass(frozen=True)
class NonconvexityReport:
    windows: list[LevelWindow]
    dps: int

    @property
    def all_negative(self) -> bool:
        return all(w.negative for w in self.windows)

    def to_dict(self) -> dict:
        return {
            "dps": self.dps,
            "all_negative": self.all_negative,
            "windows": [
                {"level": w.level, "t_contact": w.t_contact,
                 "t_window": list(w.t_window), "delta": w.delta,
                 "min_second_difference": w.min_second_difference,
                 "t_at_min": w.t_at_min}
                for w in self.windows
            ],
        }


def _mp_piece_value(rec, x):
    if rec["kind"] == "cubic":
        return x ** 3
    if rec["kind"] == "arc":
        dx = x - rec["cx"]
        da = rec["xa"] - rec["cx"]
        s = mp.sqrt(rec["r"] ** 2 - dx * dx)
        sa = mp.sqrt(rec["r"] ** 2 - da * da)
        return rec["ya"] + (x - rec["xa"]) * (dx + da) / (s + sa)
    y0, d0, s0, y1, d1, s1 = rec["data"]
    h = rec["x1"] - rec["x0"]
    u = (x - rec["x0"]) / h
    from .pieces import _QUINTIC_BASIS
    scaled = (y0, d0 * h, s0 * h * h, y1, d1 * h, s1 * h * h)
    acc = mp.mpf(0)
    for k in range(5, -1, -1):
        ck = sum(scaled[i] * _QUINTIC_BASIS[i][k] for i in range(6))
        acc = acc * u + ck
    return acc


def _mp_crossing(records, y):
    """Abscissa x > 0 with boundary(x) = y, solved to full working precision."""
    for rec in records:
        v0 = _mp_piece_value(rec, rec["x0"])
        v1 = _mp_piece_value(rec, rec["x1"])
        if v0 <= y <= v1:
            lo, hi = rec["x0"], rec["x1"]
            flo = v0 - y
            for _ in range(mp.mp.dps * 4):
                midp = (lo + hi) / 2
                fm = _mp_piece_value(rec, midp) - y
                if fm == 0:
                    return midp
                if (fm < 0) == (flo < 0):
                    lo, flo = midp, fm
                else:
                    hi = midp
                if hi - lo < mp.mpf(10) ** (-mp.mp.dps) * hi:
                    break
            return (lo + hi) / 2
    raise SolverError(f"no boundary crossing at height {y}")


def verify_nonconvexity(domain: GraphCapDomain, params: CounterexampleParams,
                        windows: Optional[Sequence[tuple[float, float]]] = None,
                        points: int = 33, dps: int = 60) -> NonconvexityReport:
    """Locate a strictly negative second difference of D(t) at every level.

    D(t) = 2 log((x+y)/(x-y)) by the mirror symmetry of the domain and the
    diagonal pair.  The construction is re-run in mpmath at ``dps`` digits
    (contact dips are ~x_n^5 deep over ~x_n^3 wide windows, beyond float64
    for n >= 2), and the float domain is cross-checked against the
    high-precision boundary before sampling.
    """
    with mp.workdps(dps):
        records = _build_half_records(params, mp.sqrt)
        for rec, pc in zip(records, _materialize(records)):
            xm = (float(rec["x0"]) + float(rec["x1"])) / 2.0
            ref = _mp_piece_value(rec, mp.mpf(xm))
            if abs(pc.value(xm) - float(ref)) > 1e-9 * max(1.0, abs(float(ref))):
                raise GeometryError("float domain diverged from the exact construction")
        half = [pc for pc in domain.pieces if pc.x0 >= 0.0]
        for rec, pc in zip(records, half):
            if abs(float(rec["x0"]) - pc.x0) > 1e-12 or abs(float(rec["x1"]) - pc.x1) > 1e-12:
                raise GeometryError("domain pieces do not match the supplied parameters")

        c = mp.mpf(params.c)

        def dist_at(t):
            y = c / (mp.e ** t + 1)
            x = _mp_crossing(records, y)
            return 2 * mp.log((x + y) / (x - y))

        out = []
        for n in range(params.levels + 1):
            xn = mp.mpf(params.x0) / 4 ** n
            t_n = mp.log(c / xn ** 3 - 1)
            width = 2 * xn ** 3 / c
            if windows is not None:
                lo, hi = (mp.mpf(windows[n][0]), mp.mpf(windows[n][1]))
            else:
                lo, hi = t_n - width, t_n + 3 * width
            delta = (hi - lo) / (points - 1)
            ts = [lo + delta * i for i in range(points)]
            vals = [dist_at(t) for t in ts]
            best, best_t = None, None
            for i in range(1, points - 1):
                sd = (vals[i - 1] - 2 * vals[i] + vals[i + 1]) / (delta * delta)
                if best is None or sd < best:
                    best, best_t = sd, ts[i]
            out.append(LevelWindow(n, float(t_n), (float(lo), float(hi)),
                                   float(delta), float(best), float(best_t)))
    return NonconvexityReport(out, dps)
