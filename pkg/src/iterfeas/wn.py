"""Admissible endpoint derivative data for n <= 3, and witnesses.

W_n collects the tuples (b_0..b_n) of derivatives D^j f(1) attainable by
C^n functions f on [0,1] with D^j f(0) = 0 and D^n f increasing and
nonconstant.  Closed forms:

    W_0: b0 > 0
    W_1: 0 < b0 < b1
    W_2: 0 < 2 b0 < b1,  b1^2 < 2 b0 b2
    W_3: 0 < b2 < b3,  2 b1^2 < 3 b0 b2,
         6 b0 b3 + b2^2 + 4 b1^2 < 6 b0 b2 + 2 b1 b2 + 2 b1 b3

V_n is the two-sided variant (data at both endpoints, any interval
[c, d]); it reduces to W_n by subtracting the Taylor polynomial of the
left data and by diagonal rescaling with powers of (d - c).

witness returns the curve g playing D^n f: g(0) = 0 and I^j g(1) equals
b_{n-j}; f itself is I^n g, recoverable by iterated integration.
"""

import math
from dataclasses import dataclass, replace

from .construct import ConstructConfig, construct
from .curve import Curve, PolyPiece
from .jets import Jet, cap_for, sigma, tau
from .region import FeasibleTriple, bounds_c


class WnError(ValueError):
    pass


@dataclass(frozen=True)
class EndpointTuple:
    """Right-endpoint data b_0..b_n with all-zero left data."""
    b: tuple

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(float(v) for v in self.b))
        if not 1 <= len(self.b) <= 4:
            raise WnError("supported orders are n = 0..3")

    @property
    def n(self):
        return len(self.b) - 1


@dataclass(frozen=True)
class VTuple:
    """Two-sided endpoint data a_j, b_j on an interval [c, d]."""
    a: tuple
    b: tuple
    interval: tuple = (0.0, 1.0)

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(float(v) for v in self.a))
        object.__setattr__(self, "b", tuple(float(v) for v in self.b))
        if len(self.a) != len(self.b):
            raise WnError("a and b must have the same length")
        if not 1 <= len(self.a) <= 4:
            raise WnError("supported orders are n = 0..3")
        c, d = self.interval
        if not c < d:
            raise WnError("interval must satisfy c < d")

    @property
    def n(self):
        return len(self.a) - 1


def _tuple_of(t):
    return t.b if isinstance(t, EndpointTuple) else tuple(float(v) for v in t)


def wn_member(t) -> bool:
    """Strict membership of (b_0..b_n) in W_n."""
    b = _tuple_of(t)
    n = len(b) - 1
    if n == 0:
        return b[0] > 0
    if n == 1:
        return 0 < b[0] < b[1]
    if n == 2:
        return 0 < 2 * b[0] < b[1] and b[1] * b[1] < 2 * b[0] * b[2]
    if n == 3:
        b0, b1, b2, b3 = b
        return (0 < b2 < b3
                and 2 * b1 * b1 < 3 * b0 * b2
                and (6 * b0 * b3 + b2 * b2 + 4 * b1 * b1
                     < 6 * b0 * b2 + 2 * b1 * b2 + 2 * b1 * b3))
    raise WnError(f"n={n} is out of range (closed forms exist for n <= 3)")


def _taylor_derivs_at_1(a):
    """D^j p_a(1) for p_a(x) = sum a_k x^k / k!."""
    n = len(a) - 1
    return tuple(
        sum(a[k] / math.factorial(k - j) for k in range(j, n + 1))
        for j in range(n + 1)
    )


def t_n(v: VTuple) -> EndpointTuple:
    """Subtract the left-data Taylor polynomial: b_j - D^j p_a(1)."""
    if v.interval != (0.0, 1.0):
        raise WnError("t_n applies to tuples on [0, 1]")
    p = _taylor_derivs_at_1(v.a)
    return EndpointTuple(tuple(bj - pj for bj, pj in zip(v.b, p)))


def rescale_w(t, c, d) -> EndpointTuple:
    """Transport a [0,1]-tuple to [c, d]: multiply b_j by (d-c)^(-j)."""
    if not c < d:
        raise WnError("interval must satisfy c < d")
    b = _tuple_of(t)
    return EndpointTuple(tuple(bj * (d - c) ** (-j)
                               for j, bj in enumerate(b)))


def vn_member(v: VTuple) -> bool:
    """Pull back to [0,1], subtract the Taylor part, test W_n."""
    c, d = v.interval
    s = d - c
    pulled = VTuple(tuple(aj * s**j for j, aj in enumerate(v.a)),
                    tuple(bj * s**j for j, bj in enumerate(v.b)))
    return wn_member(t_n(pulled))


def _midpoint_targets(b):
    """construct targets (a, b, c) for the normalized witness curve; free
    lower-order targets sit at the midpoints of their admissible windows."""
    n = len(b) - 1
    bn = b[-1]
    if n == 3:
        return b[2] / bn, b[1] / bn, b[0] / bn
    if n == 2:
        ta = b[1] / bn
        tb = b[0] / bn
    else:  # n == 1
        ta = b[0] / bn
        tb = 0.5 * (ta * ta / 2 + ta / 2)
    l, r = bounds_c(ta, tb)
    return ta, tb, 0.5 * (l + r)


def witness(t, jets=None, cfg: ConstructConfig | None = None,
            tol=1e-7) -> Curve:
    """An increasing smooth g with g(0) = 0 and I^j g(1) = b_{n-j}.

    jets, when given, are the (left, right) derivative jets of g itself;
    the default realizes Dg(0) = Dg(1) = 1 with higher derivatives zero.
    Jet values are rescaled by 1/b_n internally, since the normalized
    curve is built on [0,1] -> [0,1] and then scaled by b_n; the integral
    conditions are therefore verified to tol relative to max(1, b_n).
    """
    b = _tuple_of(t)
    n = len(b) - 1
    if not wn_member(b):
        raise WnError(f"{b} is not in W_{n}")
    bn = b[-1]
    if jets is None:
        left = Jet("left", (1.0,))
        right = Jet("right", (1.0,))
    else:
        left, right = jets
    left = Jet("left", tuple(v / bn for v in left.values))
    right = Jet("right", tuple(v / bn for v in right.values))

    if n == 0:
        lcap, rcap = cap_for(left), cap_for(right)
        delta = min(0.45, lcap.delta0, rcap.delta0)
        sig = sigma(delta, lcap)
        ta = tau(delta, rcap)
        mid = PolyPiece(delta, 1.0 - delta, [delta, 1.0], center=delta)
        g = Curve(list(sig.pieces) + [mid] + list(ta.pieces),
                  domain=(0.0, 1.0))
    else:
        cfg = cfg or ConstructConfig()
        cfg = replace(cfg, left_jet=left, right_jet=right)
        target = FeasibleTriple(*_midpoint_targets(b))
        g = construct(target, cfg).curve

    g = Curve(g.scaled(bn).pieces, domain=(0.0, 1.0), validate=True)
    achieved = [g.eval(1.0)] + [g.iterated_integral_quad(j, tol=1e-12)
                                for j in range(1, n + 1)]
    for j, got in enumerate(achieved):
        want = b[n - j]
        if abs(got - want) > tol * max(1.0, abs(bn)):
            raise WnError(
                f"witness misses I^{j} g(1): got {got}, wanted {want}")
    return g
