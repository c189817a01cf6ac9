"""Smooth strictly-increasing witness construction for a strict triple.

Pipeline: a strict target (a, b, c) determines a point u* on the line of
second-integral-b two-step functions whose third integral is c.  Around
u* we fix a bracket [s1, s2] and a parallelogram of (u, v) pairs inside
the step triangle, pick smoothing widths theta (line offset) and delta
(corner width) small enough that the smoothed curves track the step
oracles, and then run three nested bisections:

    solve_t  adjusts the second plateau so I rho(1) = a        (monotone)
    solve_v  adjusts the first plateau so I^2 rho(1) = b       (monotone)
    solve_u  moves the step location so I^3 rho(1) = c   (sign-change)

Every inner evaluation rebuilds the candidate curve rho from scratch: the
endpoint caps sigma/tau on [0, delta/2] and [1 - delta/2, 1], and between
them the six-point polyline A..F rounded at every corner with half-width
delta^2/2.  Bisection is used everywhere because only continuity and
(for t, v) monotonicity of the objectives are guaranteed.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import jets as jets_mod
from . import hkernel
from .corner import PolylinePlan, _polyline_pieces
from .curve import Curve, PolyPiece
from .region import FeasibleTriple, classify
from .stepfn import (StepError, extremal, in_triangle, line_v,
                     solve_u_on_line, third_integral_on_line)

PSI_GRID_U = 33
PSI_GRID_V = 5


class ConstructError(RuntimeError):
    pass


class InfeasibleError(ConstructError):
    pass


class BracketError(ConstructError):
    pass


@dataclass(frozen=True)
class SParams:
    """A smoothing width with two-step parameters (delta, u, v, t)."""
    delta: float
    u: float
    v: float
    t: float

    @property
    def m1(self):
        return self.v / self.u

    @property
    def m2(self):
        return (self.t - self.v) / (1.0 - self.u)


def in_S(p: SParams) -> bool:
    """The admissible open set: widths small against the step geometry."""
    m1 = p.v / p.u
    m2 = (p.t - p.v) / (1.0 - p.u)
    return (0.0 < p.delta < 1.0
            and 3.0 * p.delta < p.u < 1.0 - 3.0 * p.delta
            and 2.0 * p.delta < m1
            and m1 + 2.0 * p.delta < m2 < 1.0 - 3.0 * p.delta)


@dataclass(frozen=True)
class DeltaWindow:
    delta_uv: float
    t1: float
    t2: float


def delta_window(u, v, a) -> DeltaWindow:
    """Largest admissible width at (u, v), with a t-interval around a.

    For 0 < delta < delta_uv and t in [t1, t2], (delta, u, v, t) lies in
    the admissible set, and t1 + 6 delta_uv < a < t2 - 6 delta_uv.
    """
    if not in_triangle(u, v, a, strict=True):
        raise StepError(f"(u, v)=({u}, {v}) not strictly inside the triangle")
    m1 = v / u
    f = (a - v - m1 * (1.0 - u)) / (8.0 - 2.0 * u)
    g = (1.0 - u - a + v) / (9.0 - 3.0 * u)
    duv = min(0.5 * f, 0.5 * g, 1.0, u / 3.0, (1.0 - u) / 3.0, v / (2.0 * u))
    lo_mid = 0.5 * ((m1 + 2.0 * duv) + (a - 6.0 * duv - v) / (1.0 - u))
    hi_mid = 0.5 * ((a + 6.0 * duv - v) / (1.0 - u) + (1.0 - 3.0 * duv))
    return DeltaWindow(duv, v + (1.0 - u) * lo_mid, v + (1.0 - u) * hi_mid)


def build_psi(p: SParams) -> PolylinePlan:
    """The six-point polyline A..F on [delta/2, 1 - delta/2].

    A and F sit on the diagonal at distance delta from the endpoints; B/C
    ride the line y = m1 + delta x and D/E the line y = m2 + delta x,
    each pair cut out by the slope-1/delta lines through A, (u, 0) and F.
    """
    if not in_S(p):
        raise ConstructError(f"{p} outside the admissible set")
    d, u = p.delta, p.u
    m1, m2 = p.m1, p.m2
    den = 1.0 - d * d
    ax, ay = d, d
    bx = d * (m1 + 1.0 - d) / den
    cx = (u + d * m1) / den
    dx = (u + d * m2) / den
    ex = ((1.0 - d) ** 2 + d * m2) / den
    fx, fy = 1.0 - d, 1.0 - d
    eta = d * d / 2.0
    points = ((ax, ay), (bx, m1 + d * bx), (cx, m1 + d * cx),
              (dx, m2 + d * dx), (ex, m2 + d * ex), (fx, fy))

    def ordered(lhs, rhs):
        # strict in exact arithmetic; at resolution scale the slack can
        # round to zero, which the window fallbacks absorb
        return lhs < rhs + 64.0 * np.spacing(max(abs(lhs), abs(rhs)))

    gaps_ok = (ordered(ax + eta, bx - eta)
               and ordered(bx + d * d, 2.0 * d)
               and ordered(u, cx - d * d)
               and ordered(cx + eta, dx - eta)
               and ordered(dx + d * d, u + d)
               and ordered(1.0 - 2.0 * d, ex - d * d)
               and ordered(ex + eta, fx - eta))
    if not gaps_ok:
        raise ConstructError(f"degenerate polyline geometry for {p}")
    return PolylinePlan(points=points, slope_in=1.0, slope_out=1.0,
                        eta=eta, domain=(d / 2.0, 1.0 - d / 2.0))


@dataclass(frozen=True)
class EndCaps:
    """Prebuilt endpoint caps shared by every curve at one width."""
    delta: float
    sigma_pieces: tuple
    tau_pieces: tuple


def make_caps(delta, left_jet, right_jet, table=None) -> EndCaps:
    table = table or hkernel.get_kernel()
    sig = jets_mod.sigma(delta, jets_mod.cap_for(left_jet), table)
    tau = jets_mod.tau(delta, jets_mod.cap_for(right_jet), table)
    cut = delta / 2.0
    sp = []
    for pc in sig.pieces:
        if pc.x1 <= cut:
            sp.append(pc)
        elif pc.x0 < cut:
            sp.append(PolyPiece(pc.x0, cut, pc.coeffs, pc.center))
    tp = []
    for pc in tau.pieces:
        if pc.x0 >= 1.0 - cut:
            tp.append(pc)
        elif pc.x1 > 1.0 - cut:
            tp.append(PolyPiece(1.0 - cut, pc.x1, pc.coeffs, pc.center))
    return EndCaps(delta, tuple(sp), tuple(tp))


def build_rho(p: SParams, caps: EndCaps, table=None, validate=True) -> Curve:
    """sigma on [0, delta/2], the rounded polyline, tau on [1-delta/2, 1]."""
    if caps.delta != p.delta:
        raise ConstructError("caps were built for a different delta")
    plan = build_psi(p)
    mid = _polyline_pieces(plan, table or hkernel.get_kernel())
    return Curve(list(caps.sigma_pieces) + mid + list(caps.tau_pieces),
                 domain=(0.0, 1.0), validate=validate)


@dataclass(frozen=True)
class ConstructConfig:
    tol_target: float = 1e-8
    quad_tol: float = 1e-11
    max_bisect: int = 200
    epsilon_s: float = 0.25
    max_retries: int = 20
    left_jet: jets_mod.Jet = jets_mod.Jet("left", ())
    right_jet: jets_mod.Jet = jets_mod.Jet("right", ())

    def __post_init__(self):
        if min(self.tol_target, self.quad_tol, self.epsilon_s) <= 0:
            raise ConstructError("tolerances must be positive")


@dataclass
class ConstructResult:
    curve: Curve
    achieved: FeasibleTriple
    params: dict
    iterations: dict


def _bisect(objective, lo, hi, tol, max_iter, increasing=True):
    """Find x in [lo, hi] with |objective(x)| <= tol.

    objective returns (value, payload); requires a sign change over the
    bracket (negative at lo, positive at hi).
    """
    flo, plo = objective(lo)
    if abs(flo) <= tol:
        return lo, plo
    fhi, phi_ = objective(hi)
    if abs(fhi) <= tol:
        return hi, phi_
    if not (flo < 0.0 < fhi):
        raise BracketError(
            f"no sign change on [{lo}, {hi}]: f(lo)={flo}, f(hi)={fhi}")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            raise ConstructError("bisection interval collapsed before tol")
        fmid, pmid = objective(mid)
        if abs(fmid) <= tol:
            return mid, pmid
        if fmid < 0.0:
            lo = mid
        else:
            hi = mid
    raise ConstructError(f"bisection iteration cap {max_iter} exceeded")


def solve_t(delta, u, v, a, cfg: ConstructConfig, caps: EndCaps,
            counters=None, table=None):
    """The unique t with I(rho)(1) = a; satisfies |t - a| < 6 delta."""
    counters = counters if counters is not None else {}
    window = delta_window(u, v, a)
    if not delta < window.delta_uv:
        raise BracketError(
            f"delta={delta} too large at (u, v)=({u}, {v}),"
            f" window={window.delta_uv}")

    def objective(t):
        counters["t_evals"] = counters.get("t_evals", 0) + 1
        rho = build_rho(SParams(delta, u, v, t), caps, table, validate=False)
        return rho.iterated_integral_at_1(1, cfg.quad_tol) - a, rho

    lo = max(window.t1, a - 6.0 * delta)
    hi = min(window.t2, a + 6.0 * delta)
    # keep the discretization slack below the 6-delta window so the
    # accepted t inherits the |t - a| < 6 delta bound of the exact root
    tol = min(cfg.tol_target, delta)
    t, rho = _bisect(objective, lo, hi, tol, cfg.max_bisect)
    counters["t_solves"] = counters.get("t_solves", 0) + 1
    return t, rho


def solve_v(delta, u, a, b, theta, cfg: ConstructConfig, caps: EndCaps,
            counters=None, table=None):
    """The unique v with I^2(rho)(1) = b; within 2 theta of the line."""
    counters = counters if counters is not None else {}

    def objective(v):
        t, rho = solve_t(delta, u, v, a, cfg, caps, counters, table)
        return rho.iterated_integral_at_1(2, cfg.quad_tol) - b, (t, rho)

    lo = line_v(u, a, b - theta)
    hi = line_v(u, a, b + theta)
    tol = min(cfg.tol_target, 0.5 * theta)
    v, (t, rho) = _bisect(objective, lo, hi, tol, cfg.max_bisect)
    counters["v_solves"] = counters.get("v_solves", 0) + 1
    return v, t, rho


def solve_u(delta, a, b, c, s1, s2, theta, cfg: ConstructConfig,
            caps: EndCaps, counters=None, table=None):
    """A u in [s1, s2] with I^3(rho)(1) = c, by sign-change bisection.

    Existence comes from the certified bracket; monotonicity in u is not
    claimed, so this reports the first sign-change root.
    """
    counters = counters if counters is not None else {}

    def objective(u):
        counters["u_evals"] = counters.get("u_evals", 0) + 1
        v, t, rho = solve_v(delta, u, a, b, theta, cfg, caps, counters, table)
        return rho.iterated_integral_at_1(3, cfg.quad_tol) - c, (v, t, rho)

    u, (v, t, rho) = _bisect(objective, s1, s2, cfg.tol_target, cfg.max_bisect)
    return u, v, t, rho


def _theta_admits_parallelogram(r1, r2, theta, a, b):
    for uu in (r1, r2):
        for w in (-theta, theta):
            if not in_triangle(uu, line_v(uu, a, b + w), a, strict=True):
                return False
    return True


def _delta_star(r1, r2, theta, a, b):
    """Safety-halved grid minimum of delta_window over the parallelogram,
    truncated by the theta-proportional cap."""
    best = math.inf
    for i in range(PSI_GRID_U):
        uu = r1 + (r2 - r1) * i / (PSI_GRID_U - 1)
        for j in range(PSI_GRID_V):
            w = -theta + 2.0 * theta * j / (PSI_GRID_V - 1)
            best = min(best, delta_window(uu, line_v(uu, a, b + w), a).delta_uv)
    return min(0.5 * best, theta * (1.0 - r2) / (6.0 * (2.0 - r1)))


def construct(target: FeasibleTriple, cfg: ConstructConfig | None = None,
              table=None) -> ConstructResult:
    """Build a smooth strictly increasing f with the three integral targets."""
    cfg = cfg or ConstructConfig()
    table = table or hkernel.get_kernel()
    report = classify(target)
    if report.row != 7:
        raise InfeasibleError(
            f"target {target.as_tuple()} is not strictly feasible"
            f" (row {report.row}, need 7)")
    a, b, c = target.as_tuple()
    ext = extremal(a, b)
    u_star = solve_u_on_line(a, b, c)
    eps = cfg.epsilon_s * min(u_star - ext.u1, ext.u2 - u_star)
    s1, s2 = u_star - eps, u_star + eps
    r1 = 0.5 * (ext.u1 + s1)
    r2 = 0.5 * (s2 + ext.u2)
    H1 = third_integral_on_line(s1, a, b)
    H2 = third_integral_on_line(s2, a, b)
    margin = min(c - H1, H2 - c)
    theta = min(c - ext.l, ext.r - c) * (1.0 - r2) * min(r1, 1.0 - r2) / 48.0

    left_cap = jets_mod.cap_for(cfg.left_jet)
    right_cap = jets_mod.cap_for(cfg.right_jet)
    counters = {"retries": 0}
    failure = "retry budget exhausted"
    for attempt in range(cfg.max_retries):
        counters["retries"] = attempt
        if not _theta_admits_parallelogram(r1, r2, theta, a, b):
            failure = "parallelogram escapes the triangle"
            theta *= 0.5
            continue
        delta_star = _delta_star(r1, r2, theta, a, b)
        delta = min(0.5 * delta_star, left_cap.delta0, right_cap.delta0)
        if not 24.0 * (theta + delta) / min(r1, 1.0 - r2) < margin:
            failure = "smoothing widths exceed the bracket margin"
            theta *= 0.5
            continue
        caps = make_caps(delta, cfg.left_jet, cfg.right_jet, table)
        try:
            u, v, t, rho = solve_u(delta, a, b, c, s1, s2, theta, cfg, caps,
                                   counters, table)
        except BracketError as exc:
            failure = f"bracket failure: {exc}"
            theta *= 0.5
            continue
        curve = Curve(rho.pieces, domain=(0.0, 1.0), validate=True)
        achieved = FeasibleTriple(
            curve.iterated_integral_quad(1, tol=cfg.quad_tol / 10),
            curve.iterated_integral_quad(2, tol=cfg.quad_tol / 10),
            curve.iterated_integral_quad(3, tol=cfg.quad_tol / 10))
        errs = [abs(x - y) for x, y in zip(achieved.as_tuple(),
                                           target.as_tuple())]
        if max(errs) > cfg.tol_target:
            raise ConstructError(
                f"achieved {achieved.as_tuple()} misses target by {max(errs)}")
        params = {"delta": delta, "u": u, "v": v, "t": t, "theta": theta,
                  "r1": r1, "r2": r2, "s1": s1, "s2": s2, "u_star": u_star,
                  "epsilon": eps}
        return ConstructResult(curve, achieved, params, dict(counters))
    raise ConstructError(
        f"no valid smoothing widths after {cfg.max_retries} attempts: "
        + failure)
