"""The fixed smoothing kernel h and its cumulative integral H.

h is the symmetrized double-exponential ramp on [0,1]: flat to all orders
at both endpoints, strictly increasing in between, with integral exactly
1/2 by the point symmetry h(x) + h(1-x) = 1.  Every corner blend and
endpoint cap in this package is driven by this one kernel.

Outside [0,1] the kernel is extended by its limits (0 below, 1 above);
composite arguments like 4kx/delta are routinely evaluated past 1 where
the blend has saturated, and this extension is the C-infinity consistent
completion.
"""

import math
from functools import lru_cache

import numpy as np

from ._quad import adaptive_gl, gl16

# below _EDGE (or above 1 - _EDGE) the double exponential has decayed past
# double precision; evaluating the closed form there risks 0*inf
_EDGE = 1e-8

_TABLE_SIZE = 4096
_TABLE_ACCURACY = 1e-13
_MAX_MOMENT = 16


def _ramp(t):
    """exp(-(1/t) exp(-1/(1-t))) on 0 < t < 1, elementwise."""
    return np.exp(-np.exp(-1.0 / (1.0 - t)) / t)


def h(x):
    """Kernel value; 0 for x <= 0, 1 for x >= 1."""
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    out = np.zeros_like(arr)
    out[arr >= 1.0 - _EDGE] = 1.0
    mid = (arr > _EDGE) & (arr < 1.0 - _EDGE)
    if mid.any():
        t = arr[mid]
        out[mid] = 0.5 * (_ramp(t) + 1.0 - _ramp(1.0 - t))
    return float(out[0]) if scalar else out


def _ramp_deriv(t):
    # D exp(-E(t)/t) with E(t) = exp(-1/(1-t)); the prefactor
    # E(t)*(1 + t/(1-t)^2) is assembled in log space so that the
    # underflowing E never meets the blowing-up rational factor
    log_pre = -1.0 / (1.0 - t) + np.log1p(t / (1.0 - t) ** 2)
    return _ramp(t) * np.exp(log_pre) / t**2


def dh(x):
    """Analytic derivative of h; 0 outside (0,1), positive inside."""
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    out = np.zeros_like(arr)
    mid = (arr > _EDGE) & (arr < 1.0 - _EDGE)
    if mid.any():
        t = arr[mid]
        out[mid] = 0.5 * (_ramp_deriv(t) + _ramp_deriv(1.0 - t))
    return float(out[0]) if scalar else out


class KernelTable:
    """Cached cumulative values H(t) = int_0^t h on a Chebyshev grid.

    The raw cumulative sums are normalized so that H(1) == 0.5 exactly;
    the normalization factor is within ~1e-15 of 1.  The table also
    carries the kernel moments

        h_moments[j] = int_0^1 h(t) t^j dt
        H_moments[j] = int_0^1 H(t) t^j dt

    which turn full-window corner and jet-cap integrals against
    polynomial weights into closed forms.
    """

    def __init__(self, size=_TABLE_SIZE, accuracy=_TABLE_ACCURACY):
        self.accuracy = accuracy
        i = np.arange(size + 1)
        self.nodes = 0.5 * (1.0 - np.cos(np.pi * i / size))
        self.nodes[0] = 0.0
        self.nodes[-1] = 1.0
        gaps = np.empty(size)
        for j in range(size):
            gaps[j] = gl16(h, self.nodes[j], self.nodes[j + 1])
        cum = np.concatenate(([0.0], np.cumsum(gaps)))
        raw_total = cum[-1]
        if abs(raw_total - 0.5) > accuracy:
            raise RuntimeError("kernel table build lost accuracy")
        self.cum = cum * (0.5 / raw_total)
        self.h_moments = np.array([
            adaptive_gl(lambda t, j=j: h(t) * t**j, 0.0, 1.0, 1e-15)
            for j in range(_MAX_MOMENT + 1)
        ])
        # int_0^1 H t^j = (1/2 - M_{j+1}) / (j+1) by parts, H(1) = 1/2
        self.H_moments = np.array([
            (0.5 - self.h_moments[j + 1]) / (j + 1)
            for j in range(_MAX_MOMENT)
        ])

    def H(self, s):
        """Cumulative integral of h from 0 to s.

        0 for s <= 0; 1/2 + (s - 1) for s >= 1 (the kernel is 1 there);
        table value plus a local Gauss panel correction in between.
        """
        if s <= 0.0:
            return 0.0
        if s >= 1.0:
            return 0.5 + (s - 1.0)
        j = int(np.searchsorted(self.nodes, s, side="right")) - 1
        base = self.nodes[j]
        return float(self.cum[j]) + (gl16(h, base, s) if s > base else 0.0)


@lru_cache(maxsize=1)
def get_kernel():
    """The shared immutable KernelTable, built once on first use."""
    return KernelTable()


def H(s, table=None):
    """Module-level convenience for table.H(s)."""
    return (table or get_kernel()).H(s)


def _self_check():
    table = get_kernel()
    assert abs(table.H(1.0) - 0.5) <= 1e-15
    assert abs(h(0.5) - 0.5) <= 1e-15
    assert math.isclose(table.h_moments[0], 0.5, abs_tol=1e-13)
    return True
