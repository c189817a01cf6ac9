"""Feasibility algebra for iterated-integral triples (a, b, c).

For an increasing f: [0,1] -> [0,1] with a = I f(1), b = I^2 f(1),
c = I^3 f(1), the attainable triples are exactly those with

    0 <= a <= 1,  a^2/2 <= b <= a/2,  l <= c <= r,

where, for 0 < a < 1 and b strictly between its bounds,

    l = 2 b^2 / (3 a),
    r = (-a^2 + 2 a b - 4 b^2 + 2 b) / (6 (1 - a)).

classify places a triple into one of seven exhaustive rows: the
degenerate constants (rows 1, 2, 4), the extremal two-step functions
(rows 3, 5, 6) and the open strict region (row 7), reporting per row
which of the eight defining inequalities hold with equality.

Equality here is exact comparison of computed doubles: the row tests
compare c against the boundary value computed by the canonical
expressions above (and b against a*a/2, a/2).  Triples built from the
same expressions classify exactly; everyone else gets the signed
near_boundary margin to apply their own tolerance.
"""

import math
import random
from dataclasses import dataclass

DEFAULT_MARGIN = 0.05

# per-row pattern of inequalities holding with equality, in the order
# (0<=a, a<=1, a^2/2<=b, b<=a/2, (c), (d), 0<=c, c<=a/6)
_ROW_EQUALITIES = {
    1: (True, False, True, True, True, True, True, True),
    2: (False, True, True, True, True, True, False, True),
    3: (False, False, True, False, True, True, False, False),
    4: (False, False, False, True, True, True, False, True),
    5: (False, False, False, False, True, False, False, False),
    6: (False, False, False, False, False, True, False, False),
    7: (False, False, False, False, False, False, False, False),
}


class RegionError(ValueError):
    pass


@dataclass(frozen=True)
class FeasibleTriple:
    a: float
    b: float
    c: float

    def __post_init__(self):
        for v in (self.a, self.b, self.c):
            if not math.isfinite(v):
                raise RegionError("triple entries must be finite")

    def as_tuple(self):
        return (self.a, self.b, self.c)


@dataclass(frozen=True)
class RegionReport:
    feasible: bool
    strict: bool
    row: int | None
    equality_flags: tuple
    near_boundary: float


def check_beta(x, y, z):
    """Evaluate the two defining inequalities on the given reals.

    Returns (holds_c, holds_d, eq_c, eq_d) where (c) is 2y^2 <= 3xz and
    (d) is 6x + 4y^2 + z^2 <= 6xz + 2yz + 2y, compared exactly with no
    tolerance.
    """
    for v in (x, y, z):
        if not math.isfinite(v):
            raise RegionError("check_beta needs finite inputs")
    lhs_c = 2 * y * y
    rhs_c = 3 * x * z
    lhs_d = 6 * x + 4 * y * y + z * z
    rhs_d = 6 * x * z + 2 * y * z + 2 * y
    return (lhs_c <= rhs_c, lhs_d <= rhs_d, lhs_c == rhs_c, lhs_d == rhs_d)


def alpha_solutions(z):
    """The two solution triples (x, y, z) of the equality system:
    (z/6, z/2, z) and (z^3/6, z^2/2, z)."""
    if not math.isfinite(z):
        raise RegionError("alpha_solutions needs finite z")
    return (z / 6, z / 2, z), (z * z * z / 6, z * z / 2, z)


def bounds_c(a, b):
    """The closed interval [l, r] of attainable c for fixed (a, b).

    Canonical expressions: l = 2*b*b/(3*a) and
    r = (-a*a + 2*a*b - 4*b*b + 2*b)/(6*(1-a)); at the degenerate ends
    b == a*a/2 and b == a/2 the interval collapses and both entries are
    returned as the single forced value (a*a*a/6, resp. a/6).
    """
    if not 0.0 < a < 1.0:
        raise RegionError(f"bounds_c needs 0 < a < 1, got a={a}")
    if not a * a / 2 <= b <= a / 2:
        raise RegionError(f"bounds_c needs a^2/2 <= b <= a/2, got b={b}")
    if b == a * a / 2:
        forced = a * a * a / 6
        return forced, forced
    if b == a / 2:
        forced = a / 6
        return forced, forced
    l = 2 * b * b / (3 * a)
    r = (-a * a + 2 * a * b - 4 * b * b + 2 * b) / (6 * (1 - a))
    return l, r


def _near_boundary(a, b, c):
    rhs_d = -a * a + 2 * a * b - 4 * b * b + 2 * b
    margins = (
        a, 1 - a,
        b - a * a / 2, a / 2 - b,
        3 * a * c - 2 * b * b,
        rhs_d - 6 * (1 - a) * c,
        c, a / 6 - c,
    )
    return min(margins)


def _direct_flags(a, b, c):
    rhs_d = -a * a + 2 * a * b - 4 * b * b + 2 * b
    return (a == 0.0, a == 1.0, a * a / 2 == b, b == a / 2,
            2 * b * b == 3 * a * c, 6 * (1 - a) * c == rhs_d,
            c == 0.0, 6 * c == a)


def classify(t: FeasibleTriple) -> RegionReport:
    """Feasibility verdict, table row, and equality pattern for a triple."""
    a, b, c = t.as_tuple()
    near = _near_boundary(a, b, c)
    row = None
    if a == 0.0:
        if b == 0.0 and c == 0.0:
            row = 1
    elif a == 1.0:
        if b == 0.5 and c == a / 6:
            row = 2
    elif 0.0 < a < 1.0 and a * a / 2 <= b <= a / 2:
        if b == a * a / 2:
            if c == a * a * a / 6:
                row = 3
        elif b == a / 2:
            if c == a / 6:
                row = 4
        else:
            l, r = bounds_c(a, b)
            if c == l:
                row = 5
            elif c == r:
                row = 6
            elif l < c < r:
                row = 7
    if row is None:
        return RegionReport(False, False, None, _direct_flags(a, b, c), near)
    return RegionReport(True, row == 7, row, _ROW_EQUALITIES[row], near)


def snap_classify(t: FeasibleTriple, tol) -> RegionReport:
    """classify after snapping entries onto any boundary within tol.

    The exact-comparison semantics of classify are right for triples
    built from the canonical boundary expressions; triples that are
    mathematically on a boundary but carry rounding noise from another
    computation route land on the intended row through this wrapper.
    """
    a, b, c = t.as_tuple()
    if abs(a) <= tol:
        a = 0.0
    elif abs(a - 1.0) <= tol:
        a = 1.0
    if abs(b - a * a / 2) <= tol:
        b = a * a / 2
    elif abs(b - a / 2) <= tol:
        b = a / 2
    if a == 0.0:
        if abs(b) <= tol:
            b = 0.0
        if abs(c) <= tol:
            c = 0.0
    elif a == 1.0 or (0.0 < a < 1.0 and a * a / 2 <= b <= a / 2):
        l, r = (a / 6, a / 6) if a == 1.0 else bounds_c(a, b)
        if abs(c - l) <= tol:
            c = l
        elif abs(c - r) <= tol:
            c = r
    return classify(FeasibleTriple(a, b, c))


def sample_strict(seed, margin=DEFAULT_MARGIN):
    """Deterministic strictly feasible triple: a, then b, then c, each
    uniform in its open interval shrunk by the relative margin."""
    if not 0.0 <= margin < 0.5:
        raise RegionError("margin must lie in [0, 0.5)")
    rng = random.Random(seed)

    def draw(lo, hi):
        pad = margin * (hi - lo)
        return rng.uniform(lo + pad, hi - pad)

    a = draw(0.0, 1.0)
    b = draw(a * a / 2, a / 2)
    l, r = bounds_c(a, b)
    c = draw(l, r)
    return FeasibleTriple(a, b, c)
