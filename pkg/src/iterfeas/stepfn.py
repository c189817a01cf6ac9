"""Two-step oracles: the triangle of admissible steps and the line of
constant second integral.

f_{uvt} takes the value v/u on [0, u) and (t - v)/(1 - u) on [u, 1]; its
integral is v at u and t at 1.  For a fixed first-integral target a, the
increasing such functions correspond to (u, v) in the triangle T bounded
by y = ax, y = 0, y = x - (1 - a); those with second integral b lie on
the line v = au - a + 2b.  Along that line the third integral is the
affine function ((a - 2b) u - a + 4b)/6, increasing in u, whose values at
the segment endpoints are the sharp bounds l and r on I^3 f(1).
"""

from dataclasses import dataclass

from .curve import ConstPiece, Curve
from .region import RegionError, bounds_c


class StepError(ValueError):
    pass


@dataclass(frozen=True)
class StepParams:
    u: float
    v: float
    t: float

    def __post_init__(self):
        if not 0.0 < self.u < 1.0:
            raise StepError(f"u must lie in (0, 1), got {self.u}")

    @property
    def m1(self):
        return self.v / self.u

    @property
    def m2(self):
        return (self.t - self.v) / (1.0 - self.u)


@dataclass(frozen=True)
class ExtremalData:
    u1: float
    v1: float
    u2: float
    v2: float
    l: float
    r: float


def make_two_step(p: StepParams) -> Curve:
    """The step curve with plateau m1 on [0, u) and m2 on [u, 1]."""
    return Curve([ConstPiece(0.0, p.u, p.m1), ConstPiece(p.u, 1.0, p.m2)])


def in_triangle(u, v, a, strict=True):
    """Membership of (u, v) in the region (u - (1-a))_+ <= v <= au."""
    if not 0.0 < u < 1.0:
        raise StepError(f"u must lie in (0, 1), got {u}")
    if not 0.0 <= a <= 1.0:
        raise StepError(f"a must lie in [0, 1], got {a}")
    lower = max(u - (1.0 - a), 0.0)
    if strict:
        return lower < v < a * u
    return lower <= v <= a * u


def line_v(u, a, b):
    """The unique v with I^2(f_{uv})(1) = b: the line v = au - a + 2b."""
    return a * u - a + 2 * b


def extremal(a, b) -> ExtremalData:
    """Endpoints of the line segment inside the triangle, and the third
    integral bounds they realize."""
    if not 0.0 < a < 1.0:
        raise StepError(f"extremal needs 0 < a < 1, got a={a}")
    if not a * a / 2 <= b < a / 2:
        raise StepError(f"extremal needs a^2/2 <= b < a/2, got b={b}")
    u1 = 1.0 - 2.0 * b / a
    u2 = (1.0 - 2.0 * a + 2.0 * b) / (1.0 - a)
    v2 = (2.0 * b - a * a) / (1.0 - a)
    try:
        l, r = bounds_c(a, b)
    except RegionError as exc:
        raise StepError(str(exc)) from exc
    return ExtremalData(u1, 0.0, u2, v2, l, r)


def third_integral_on_line(u, a, b):
    """I^3(f_{u, line_v(u)})(1) = ((a - 2b) u - a + 4b) / 6."""
    return ((a - 2 * b) * u - a + 4 * b) / 6.0


def solve_u_on_line(a, b, c):
    """Invert the closed form: the u on the line with third integral c."""
    if a == 2 * b:
        raise StepError("a == 2b is degenerate; the line has no spread")
    return (6 * c + a - 4 * b) / (a - 2 * b)
