"""Piecewise function representation on a compact interval.

A Curve is an ordered list of pieces partitioning its domain.  Piece
kinds: polynomial (degree <= 8, coefficients about a local center),
constant (step plateaus, the one kind allowed to jump at breakpoints),
corner_blend (a kernel-smoothed two-slope corner over its full window)
and jet_cap (the endpoint cap realizing a prescribed derivative jet).

Evaluation at a shared breakpoint returns the left piece's value.

Integration strategy: polynomial and constant pieces integrate in closed
form.  Corner and jet pieces over their full window integrate against
polynomial weights through precomputed kernel moments (see hkernel);
partial spans fall back to adaptive Gauss-Legendre panels.  The
iterated_integral_quad path below ignores all of that and quadratures
raw point values only, so it can serve as an independent oracle.
"""

import bisect
import json
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from . import hkernel
from ._quad import adaptive_gl

MAX_POLY_DEGREE = 8
STITCH_TOL = 1e-12
CURVE_FORMAT = "curve/1"


class CurveError(ValueError):
    pass


def _poly_affine(coeffs, p, q):
    """Coefficients of t -> poly(p*t + q) given coeffs of poly(x)."""
    out = np.zeros(1)
    base = np.ones(1)
    lin = np.array([q, p], dtype=float)
    for c in coeffs:
        out = P.polyadd(out, c * base)
        base = P.polymul(base, lin)
    return out


def _poly_definite(coeffs, lo, hi):
    anti = P.polyint(coeffs)
    return P.polyval(hi, anti) - P.polyval(lo, anti)


@dataclass(frozen=True)
class CornerSpec:
    """A two-slope corner: slopes m1 -> m2 at the point (a, c), blended
    over the window [a - delta, a + delta]."""
    m1: float
    m2: float
    a: float
    c: float
    delta: float

    def __post_init__(self):
        if not self.delta > 0:
            raise CurveError("corner half-width must be positive")

    def line_value(self, x):
        """The unsmoothed two-line function F at x."""
        m = self.m1 if x <= self.a else self.m2
        return self.c + m * (x - self.a)


class PolyPiece:
    kind = "polynomial"
    closed_form = True

    def __init__(self, x0, x1, coeffs, center=None):
        if not x1 > x0:
            raise CurveError(f"empty piece interval [{x0}, {x1}]")
        coeffs = np.atleast_1d(np.asarray(coeffs, dtype=float))
        if len(coeffs) - 1 > MAX_POLY_DEGREE:
            raise CurveError("polynomial piece degree exceeds 8")
        self.x0 = float(x0)
        self.x1 = float(x1)
        self.center = float(x0 if center is None else center)
        self.coeffs = coeffs
        self._deriv = P.polyder(coeffs) if len(coeffs) > 1 else np.zeros(1)

    def params(self):
        return {"center": self.center, "coeffs": list(self.coeffs)}

    def value(self, x):
        return float(P.polyval(x - self.center, self.coeffs))

    def values(self, xs):
        return P.polyval(xs - self.center, self.coeffs)

    def deriv(self, x):
        return float(P.polyval(x - self.center, self._deriv))

    def deriv_values(self, xs):
        return P.polyval(xs - self.center, self._deriv) * np.ones_like(xs)

    def weighted_integral(self, wcoeffs, tol, lo=None, hi=None):
        lo = self.x0 if lo is None else lo
        hi = self.x1 if hi is None else hi
        w_local = _poly_affine(wcoeffs, 1.0, self.center)
        prod = P.polymul(self.coeffs, w_local)
        return _poly_definite(prod, lo - self.center, hi - self.center)

    def scaled(self, s):
        return PolyPiece(self.x0, self.x1, self.coeffs * s, self.center)


class ConstPiece:
    kind = "constant"
    closed_form = True

    def __init__(self, x0, x1, value):
        if not x1 > x0:
            raise CurveError(f"empty piece interval [{x0}, {x1}]")
        self.x0 = float(x0)
        self.x1 = float(x1)
        self.c = float(value)

    def params(self):
        return {"value": self.c}

    def value(self, x):
        return self.c

    def values(self, xs):
        return np.full_like(xs, self.c)

    def deriv(self, x):
        return 0.0

    def deriv_values(self, xs):
        return np.zeros_like(xs)

    def weighted_integral(self, wcoeffs, tol, lo=None, hi=None):
        lo = self.x0 if lo is None else lo
        hi = self.x1 if hi is None else hi
        return self.c * _poly_definite(np.asarray(wcoeffs, float), lo, hi)

    def scaled(self, s):
        return ConstPiece(self.x0, self.x1, self.c * s)


class CornerPiece:
    kind = "corner_blend"
    closed_form = False

    def __init__(self, spec: CornerSpec, table=None):
        self.spec = spec
        self.x0 = spec.a - spec.delta
        self.x1 = spec.a + spec.delta
        self.table = table or hkernel.get_kernel()

    def params(self):
        s = self.spec
        return {"m1": s.m1, "m2": s.m2, "a": s.a, "c": s.c, "delta": s.delta}

    def value(self, x):
        s = self.spec
        t = (x - s.a) / s.delta
        base = s.m1 * t + 2.0 * (s.m2 - s.m1) * self.table.H(0.5 * (t + 1.0))
        return s.c + s.delta * base

    def values(self, xs):
        return np.array([self.value(x) for x in np.atleast_1d(xs)])

    def deriv(self, x):
        s = self.spec
        t = (x - s.a) / s.delta
        return s.m1 + (s.m2 - s.m1) * hkernel.h(0.5 * (t + 1.0))

    def deriv_values(self, xs):
        s = self.spec
        t = (np.asarray(xs) - s.a) / s.delta
        return s.m1 + (s.m2 - s.m1) * hkernel.h(0.5 * (t + 1.0))

    def weighted_integral(self, wcoeffs, tol, lo=None, hi=None):
        if lo is not None or hi is not None:
            lo = self.x0 if lo is None else lo
            hi = self.x1 if hi is None else hi
            w = np.asarray(wcoeffs, float)
            return adaptive_gl(
                lambda t: self.values(t) * P.polyval(t, w), lo, hi, tol)
        s = self.spec
        d = s.delta
        # x = a + d*s0 maps the window to s0 in [-1, 1]
        q = _poly_affine(wcoeffs, d, s.a)
        line = _poly_definite(P.polymul(np.array([s.c, d * s.m1]), q), -1.0, 1.0)
        # s0 = 2t - 1 sends the H((s0+1)/2) factor to H(t) moments
        r = _poly_affine(q, 2.0, -1.0)
        Hm = self.table.H_moments
        blend = float(np.dot(r, Hm[: len(r)]))
        return d * line + 4.0 * d * d * (s.m2 - s.m1) * blend

    def scaled(self, sc):
        s = self.spec
        return CornerPiece(
            CornerSpec(sc * s.m1, sc * s.m2, s.a, sc * s.c, s.delta),
            self.table)


class JetCapPiece:
    """The inner part of an endpoint cap: u + h(4kx/delta)((x+delta)/4 - u)
    on [0, delta/(4k)] (orient 'left'), or its point reflection
    yscale*(1 - f(1-x)) on [1 - delta/(4k), 1] (orient 'right')."""

    kind = "jet_cap"
    closed_form = False

    def __init__(self, alphas, k, delta, orient="left", yscale=1.0,
                 table=None):
        if orient not in ("left", "right"):
            raise CurveError("jet cap orient must be 'left' or 'right'")
        if k < 2 or delta <= 0:
            raise CurveError("jet cap needs k >= 2 and delta > 0")
        self.alphas = tuple(float(a) for a in alphas)
        self.k = int(k)
        self.delta = float(delta)
        self.orient = orient
        self.yscale = float(yscale)
        self.table = table or hkernel.get_kernel()
        self.width = self.delta / (4.0 * self.k)
        if orient == "left":
            self.x0, self.x1 = 0.0, self.width
        else:
            self.x0, self.x1 = 1.0 - self.width, 1.0
        # u(x) = sum alpha_j x^j / j!
        self.ucoeffs = np.zeros(len(self.alphas) + 1)
        for j, a in enumerate(self.alphas, start=1):
            self.ucoeffs[j] = a / math.factorial(j)
        self._du = P.polyder(self.ucoeffs) if len(self.ucoeffs) > 1 else np.zeros(1)

    def params(self):
        return {"alphas": list(self.alphas), "k": self.k,
                "delta": self.delta, "orient": self.orient,
                "yscale": self.yscale}

    def _raw(self, xi):
        u = P.polyval(xi, self.ucoeffs)
        lin = 0.25 * (xi + self.delta)
        return u + hkernel.h(xi / self.width) * (lin - u)

    def _raw_deriv(self, xi):
        t = xi / self.width
        u = P.polyval(xi, self.ucoeffs)
        du = P.polyval(xi, self._du)
        lin = 0.25 * (xi + self.delta)
        return (du * (1.0 - hkernel.h(t))
                + hkernel.dh(t) / self.width * (lin - u)
                + 0.25 * hkernel.h(t))

    def value(self, x):
        if self.orient == "left":
            return self.yscale * float(self._raw(x))
        return self.yscale * float(1.0 - self._raw(1.0 - x))

    def values(self, xs):
        xs = np.asarray(xs, dtype=float)
        if self.orient == "left":
            return self.yscale * self._raw(xs)
        return self.yscale * (1.0 - self._raw(1.0 - xs))

    def deriv(self, x):
        xi = x if self.orient == "left" else 1.0 - x
        return self.yscale * float(self._raw_deriv(xi))

    def deriv_values(self, xs):
        xs = np.asarray(xs, dtype=float)
        xi = xs if self.orient == "left" else 1.0 - xs
        return self.yscale * self._raw_deriv(xi)

    def weighted_integral(self, wcoeffs, tol, lo=None, hi=None):
        if lo is not None or hi is not None:
            lo = self.x0 if lo is None else lo
            hi = self.x1 if hi is None else hi
            w = np.asarray(wcoeffs, float)
            return adaptive_gl(
                lambda t: self.values(t) * P.polyval(t, w), lo, hi, tol)
        W = self.width
        lin = np.array([0.25 * self.delta, 0.25])
        if self.orient == "left":
            wloc = np.asarray(wcoeffs, float)
            sign = 1.0
            const_part = 0.0
        else:
            # x = 1 - xi
            wloc = _poly_affine(wcoeffs, -1.0, 1.0)
            sign = -1.0
            const_part = _poly_definite(wloc, 0.0, W)
        upart = _poly_definite(P.polymul(self.ucoeffs, wloc), 0.0, W)
        q = P.polymul(P.polysub(lin, self.ucoeffs), wloc)
        qt = _poly_affine(q, W, 0.0)
        Mm = self.table.h_moments
        hpart = W * float(np.dot(qt, Mm[: len(qt)]))
        return self.yscale * (const_part + sign * (upart + hpart))

    def scaled(self, s):
        return JetCapPiece(self.alphas, self.k, self.delta, self.orient,
                           self.yscale * s, self.table)


def _weight_coeffs(n, x):
    """Coefficients in t of (x - t)^(n-1) / (n-1)!."""
    if n == 1:
        return np.array([1.0])
    if n == 2:
        return np.array([x, -1.0])
    if n == 3:
        return np.array([0.5 * x * x, -x, 0.5])
    raise CurveError("iterated integrals supported for n in {1, 2, 3}")


class Curve:
    """An immutable piecewise function on a closed interval."""

    def __init__(self, pieces, domain=None, validate=True):
        if not pieces:
            raise CurveError("a curve needs at least one piece")
        self.pieces = list(pieces)
        self.domain = tuple(domain) if domain else (
            self.pieces[0].x0, self.pieces[-1].x1)
        self.breaks = [p.x0 for p in self.pieces] + [self.pieces[-1].x1]
        if validate:
            self._validate()

    def _validate(self):
        lo, hi = self.domain
        if not (self.pieces[0].x0 == lo and self.pieces[-1].x1 == hi):
            raise CurveError("pieces do not span the domain")
        for left, right in zip(self.pieces, self.pieces[1:]):
            if left.x1 != right.x0:
                raise CurveError(
                    f"pieces not contiguous at {left.x1} vs {right.x0}")
            if left.kind == "constant" and right.kind == "constant":
                continue  # step curves jump by design
            bp = left.x1
            v0, v1 = left.value(bp), right.value(bp)
            if abs(v0 - v1) > STITCH_TOL * max(1.0, abs(v0)):
                raise CurveError(
                    f"value mismatch {v0} vs {v1} at breakpoint {bp}")

    def _piece_index(self, x):
        lo, hi = self.domain
        if x < lo or x > hi:
            raise CurveError(f"{x} outside domain [{lo}, {hi}]")
        i = bisect.bisect_left(self.breaks, x) - 1
        return min(max(i, 0), len(self.pieces) - 1)

    def eval(self, x):
        return self.pieces[self._piece_index(x)].value(x)

    def eval_many(self, xs):
        xs = np.asarray(xs, dtype=float)
        out = np.empty_like(xs)
        for i, x in np.ndenumerate(xs):
            out[i] = self.eval(float(x))
        return out

    def deriv(self, x):
        i = self._piece_index(x)
        piece = self.pieces[i]
        if x == piece.x0 and i > 0:
            left = self.pieces[i - 1]
            if (left.kind == "constant" and piece.kind == "constant"
                    and left.c != piece.c):
                raise CurveError(f"derivative undefined at step jump {x}")
            return left.deriv(x)
        if (x == piece.x1 and i + 1 < len(self.pieces)
                and piece.kind == "constant"
                and self.pieces[i + 1].kind == "constant"
                and piece.c != self.pieces[i + 1].c):
            raise CurveError(f"derivative undefined at step jump {x}")
        return piece.deriv(x)

    def integrate(self, x0, x1, tol=1e-11):
        lo, hi = self.domain
        if not (lo <= x0 <= x1 <= hi):
            raise CurveError(f"[{x0}, {x1}] not inside domain [{lo}, {hi}]")
        if x0 == x1:
            return 0.0
        one = np.array([1.0])
        total = 0.0
        for piece in self.pieces:
            a = max(piece.x0, x0)
            b = min(piece.x1, x1)
            if a >= b:
                continue
            if a == piece.x0 and b == piece.x1:
                total += piece.weighted_integral(one, tol)
            else:
                total += piece.weighted_integral(one, tol, a, b)
        return total

    def iterated_integral(self, n, x=None, tol=1e-11):
        """I^n f(x) via the single-integral identity
        I^n f(x) = int_0^x f(t) (x-t)^(n-1)/(n-1)! dt."""
        lo, hi = self.domain
        if lo != 0.0:
            raise CurveError("iterated integrals assume the domain starts at 0")
        x = hi if x is None else x
        if not (lo <= x <= hi):
            raise CurveError(f"{x} outside domain")
        w = _weight_coeffs(n, x)
        total = 0.0
        for piece in self.pieces:
            if piece.x1 <= x:
                total += piece.weighted_integral(w, tol)
            elif piece.x0 < x:
                total += piece.weighted_integral(w, tol, piece.x0, x)
        return total

    def iterated_integral_at_1(self, n, tol=1e-11):
        if self.domain != (0.0, 1.0):
            raise CurveError("iterated_integral_at_1 needs domain [0, 1]")
        return self.iterated_integral(n, 1.0, tol)

    def iterated_integral_quad(self, n, x=None, tol=1e-12):
        """Independent oracle: raw adaptive quadrature of point values,
        bypassing every closed form and kernel moment."""
        lo, hi = self.domain
        x = hi if x is None else x
        w = _weight_coeffs(n, x)
        total = 0.0
        for piece in self.pieces:
            b = min(piece.x1, x)
            if piece.x0 >= b:
                continue
            total += adaptive_gl(
                lambda t, p=piece: p.values(t) * P.polyval(t, w),
                piece.x0, b, tol)
        return total

    def min_deriv_on_grid(self, m):
        if m < 2:
            raise CurveError("grid needs at least 2 points")
        lo, hi = self.domain
        xs = lo + (np.arange(m) + 0.5) * (hi - lo) / m
        eps = 1e-3 * (hi - lo) / m
        for bp in self.breaks:
            xs[np.abs(xs - bp) < 1e-15] += eps
        best = math.inf
        for piece in self.pieces:
            sel = xs[(xs > piece.x0) & (xs <= piece.x1)]
            if sel.size:
                best = min(best, float(np.min(piece.deriv_values(sel))))
        return best

    def antiderivative(self):
        """Materialize I f as a polynomial curve (poly/const pieces only)."""
        out = []
        acc = 0.0
        for piece in self.pieces:
            if piece.kind == "constant":
                coeffs = np.array([acc, piece.c])
            elif piece.kind == "polynomial":
                coeffs = P.polyint(piece.coeffs)
                coeffs[0] = acc
            else:
                raise CurveError("antiderivative needs a polynomial curve")
            center = piece.x0 if piece.kind == "constant" else piece.center
            if piece.kind == "polynomial" and center != piece.x0:
                # re-anchor so the accumulated constant applies at x0
                coeffs[0] += -P.polyval(piece.x0 - center, coeffs) + acc
            out.append(PolyPiece(piece.x0, piece.x1, coeffs, center))
            acc = out[-1].value(piece.x1)
        return Curve(out, domain=self.domain)

    def scaled(self, s):
        return Curve([p.scaled(s) for p in self.pieces], domain=self.domain,
                     validate=False)

    def to_json_dict(self):
        return {
            "version": CURVE_FORMAT,
            "domain": list(self.domain),
            "pieces": [
                {"interval": [p.x0, p.x1], "kind": p.kind, "params": p.params()}
                for p in self.pieces
            ],
        }

    def dumps(self):
        return json.dumps(self.to_json_dict(), indent=2)


def _piece_from_json(entry):
    x0, x1 = entry["interval"]
    kind = entry["kind"]
    p = entry["params"]
    if kind == "polynomial":
        return PolyPiece(x0, x1, p["coeffs"], p["center"])
    if kind == "constant":
        return ConstPiece(x0, x1, p["value"])
    if kind == "corner_blend":
        return CornerPiece(CornerSpec(p["m1"], p["m2"], p["a"], p["c"],
                                      p["delta"]))
    if kind == "jet_cap":
        return JetCapPiece(p["alphas"], p["k"], p["delta"], p["orient"],
                           p["yscale"])
    raise CurveError(f"unknown piece kind {kind!r}")


def curve_from_json_dict(doc):
    if doc.get("version") != CURVE_FORMAT:
        raise CurveError(f"unsupported curve format {doc.get('version')!r}")
    return Curve([_piece_from_json(e) for e in doc["pieces"]],
                 domain=tuple(doc["domain"]))


def curve_loads(text):
    return curve_from_json_dict(json.loads(text))


def load_curve(path):
    with open(path) as fh:
        return curve_from_json_dict(json.load(fh))


def save_curve(curve, path):
    with open(path, "w") as fh:
        fh.write(curve.dumps())
        fh.write("\n")
