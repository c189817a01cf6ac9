"""Corner rounding of two-slope corners and polylines.

round_corner replaces the corner of the two-line function F (slopes m1,
m2 through (a, c)) by the kernel blend over [a - delta, a + delta]; the
result matches F outside and at both window edges, its derivative runs
monotonically from m1 to m2, and its graph stays inside the convex hull
of the three corner points.  round_polyline applies that simultaneously
at every breakpoint of a polyline, all windows sharing one half-width.
"""

from dataclasses import dataclass

import numpy as np

from . import hkernel
from .curve import CornerPiece, CornerSpec, Curve, CurveError, PolyPiece


@dataclass(frozen=True)
class PolylinePlan:
    """A polyline with entry/exit slopes and a shared rounding half-width.

    points are (x_i, y_i) strictly increasing in x; the plan covers
    [domain[0], domain[1]] with a straight line of slope slope_in before
    the first point and slope_out after the last.  Windows of half-width
    eta around consecutive points must not overlap: x_i + 2 eta < x_{i+1}.
    """
    points: tuple
    slope_in: float
    slope_out: float
    eta: float
    domain: tuple

    def __post_init__(self):
        if self.eta <= 0:
            raise CurveError("eta must be positive")
        xs = [p[0] for p in self.points]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise CurveError("polyline abscissas must strictly increase")
        for i, (a, b) in enumerate(zip(xs, xs[1:])):
            if not a + 2.0 * self.eta < b:
                raise CurveError(
                    f"rounding windows overlap between points {i} and {i + 1}"
                    f" ({a} + 2*{self.eta} >= {b})")
        lo, hi = self.domain
        if not (lo <= xs[0] - self.eta and xs[-1] + self.eta <= hi):
            raise CurveError("plan abscissas too close to the domain edge")


def _line_piece(x0, x1, slope, xref, yref):
    """The line of given slope through (xref, yref), as a piece on [x0, x1]."""
    return PolyPiece(x0, x1, [yref + slope * (x0 - xref), slope], center=x0)


def round_corner(spec: CornerSpec, table=None) -> Curve:
    """Smooth a single corner over its window [a - delta, a + delta]."""
    table = table or hkernel.get_kernel()
    if spec.m1 == spec.m2:
        x0, x1 = spec.a - spec.delta, spec.a + spec.delta
        return Curve([_line_piece(x0, x1, spec.m1, spec.a, spec.c)])
    return Curve([CornerPiece(spec, table)])


def _window_representable(x, eta):
    """Whether [x - eta, x + eta] survives rounding at the scale of x.

    Needs eta at least ~64 ulp: then the float edges sit within eta/128
    of the true ones, where the kernel is already flat to ~1e-16, so the
    blend still stitches its neighbors to machine precision.
    """
    return eta >= 64.0 * np.spacing(abs(x) + eta)


def _polyline_pieces(plan: PolylinePlan, table):
    pts = list(plan.points)
    n = len(pts)
    slopes_in = [plan.slope_in] + [
        (pts[i + 1][1] - pts[i][1]) / (pts[i + 1][0] - pts[i][0])
        for i in range(n - 1)
    ]
    slopes_out = slopes_in[1:] + [plan.slope_out]
    pieces = []
    cursor = plan.domain[0]
    for i, (x, y) in enumerate(pts):
        if not _window_representable(x, plan.eta):
            # window narrower than float resolution here: the smoothed
            # corner is indistinguishable from the sharp one in doubles
            pieces.append(_line_piece(cursor, x, slopes_in[i], x, y))
            cursor = x
            continue
        w0, w1 = x - plan.eta, x + plan.eta
        if w0 > cursor:
            pieces.append(_line_piece(cursor, w0, slopes_in[i], x, y))
        spec = CornerSpec(slopes_in[i], slopes_out[i], x, y, plan.eta)
        if spec.m1 == spec.m2:
            pieces.append(_line_piece(w0, w1, spec.m1, x, y))
        else:
            pieces.append(CornerPiece(spec, table))
        cursor = w1
    if cursor < plan.domain[1]:
        xn, yn = pts[-1]
        pieces.append(_line_piece(cursor, plan.domain[1], plan.slope_out,
                                  xn, yn))
    return pieces


def round_polyline(plan: PolylinePlan, table=None) -> Curve:
    """Smooth every breakpoint of the polyline with half-width plan.eta."""
    table = table or hkernel.get_kernel()
    return Curve(_polyline_pieces(plan, table), domain=plan.domain)


def hull_check(spec: CornerSpec, samples, table=None, slack=1e-10):
    """True iff the rounded corner stays in the closed triangle spanned by
    (a-delta, F(a-delta)), (a, c), (a+delta, F(a+delta))."""
    if samples < 3:
        raise CurveError("need at least 3 samples")
    curve = round_corner(spec, table)
    x0, x1 = spec.a - spec.delta, spec.a + spec.delta
    y0, y1 = spec.line_value(x0), spec.line_value(x1)
    xs = np.linspace(x0, x1, samples)
    secant = y0 + (y1 - y0) * (xs - x0) / (x1 - x0)
    broken = np.array([spec.line_value(x) for x in xs])
    lo = np.minimum(secant, broken) - slack
    hi = np.maximum(secant, broken) + slack
    ys = curve.eval_many(xs)
    return bool(np.all(ys >= lo) and np.all(ys <= hi))
