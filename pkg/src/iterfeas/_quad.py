"""Adaptive Gauss-Legendre quadrature on 16-node panels."""

import numpy as np

_NODES16, _WEIGHTS16 = np.polynomial.legendre.leggauss(16)


class QuadratureError(RuntimeError):
    """Raised when panel refinement hits the depth cap without converging."""


def gl16(fn, a, b):
    """One 16-node Gauss-Legendre panel of fn over [a, b].

    fn must accept an ndarray of abscissas and return values elementwise.
    """
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    return half * float(np.dot(_WEIGHTS16, fn(mid + half * _NODES16)))


def adaptive_gl(fn, a, b, tol, max_depth=40):
    """Integrate fn over [a, b] to absolute error <= tol.

    Bisection refinement of 16-node panels; the error estimate on a panel
    is the difference between the whole-panel value and the two-half sum.
    """
    if a == b:
        return 0.0
    whole = gl16(fn, a, b)
    return _refine(fn, a, b, whole, tol, max_depth)


_EPS = float(np.finfo(float).eps)


def _refine(fn, a, b, whole, tol, depth):
    mid = 0.5 * (a + b)
    left = gl16(fn, a, mid)
    right = gl16(fn, mid, b)
    # absolute tolerances below the rounding level of the panel sums are
    # unattainable; stop refining once the estimate is rounding-limited
    floor = 4.0 * _EPS * (abs(left) + abs(right))
    if (abs(left + right - whole) <= max(tol, floor)
            or (b - a) < 1e-15 * max(1.0, abs(a))):
        return left + right
    if depth <= 0:
        raise QuadratureError(
            f"quadrature did not converge on [{a}, {b}] at tol={tol}"
        )
    return (_refine(fn, a, mid, left, 0.5 * tol, depth - 1)
            + _refine(fn, mid, b, right, 0.5 * tol, depth - 1))
