"""Endpoint caps with prescribed finite derivative jets.

sigma builds a smooth increasing cap on [0, delta] that has the jet's
derivatives at 0 and equals the identity from delta/2 on; tau is its
point reflection on [1 - delta, 1] with the jet at 1.  A finite jet is
realized through its Taylor polynomial u, which the construction only
consumes through the values of u and Du near 0.

Sign classes: an increasing function forces the first nonzero derivative
at the left endpoint to be positive, and the first nonzero derivative
beta_j at the right endpoint to satisfy (-1)^(j+1) beta_j > 0.
"""

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from . import hkernel
from .curve import CornerPiece, CornerSpec, Curve, JetCapPiece, PolyPiece

CERT_GRID = 1000


class JetError(ValueError):
    pass


@dataclass(frozen=True)
class Jet:
    """Derivative orders 1..m prescribed at one endpoint of [0, 1].

    The function value itself is fixed by normalization: 0 at the left
    endpoint, 1 at the right.
    """
    endpoint: str
    values: tuple

    def __post_init__(self):
        if self.endpoint not in ("left", "right"):
            raise JetError("endpoint must be 'left' or 'right'")
        object.__setattr__(self, "values",
                           tuple(float(v) for v in self.values))

    @property
    def base_value(self):
        return 0.0 if self.endpoint == "left" else 1.0

    def is_zero(self):
        return all(v == 0.0 for v in self.values)

    def reflected(self):
        """The left jet alpha_j = (-1)^(j+1) beta_j of a right jet."""
        if self.endpoint != "right":
            raise JetError("reflected() applies to right jets")
        return Jet("left", tuple((-1.0) ** (j + 1) * v
                                 for j, v in enumerate(self.values, start=1)))


def validate_jet(jet: Jet) -> bool:
    """Sign-class check: increasing caps admit the jet iff this holds."""
    for j, v in enumerate(jet.values, start=1):
        if v == 0.0:
            continue
        if jet.endpoint == "left":
            return v > 0.0
        return (-1.0) ** (j + 1) * v > 0.0
    return True


@dataclass(frozen=True)
class JetCapSpec:
    """A validated jet with its blend order k and safe width delta0."""
    delta: float
    k: int
    delta0: float
    jet: Jet


def _taylor_coeffs(jet: Jet):
    coeffs = np.zeros(len(jet.values) + 1)
    for j, v in enumerate(jet.values, start=1):
        coeffs[j] = v / math.factorial(j)
    return coeffs


def choose_k_delta0(jet: Jet):
    """Smallest blend order k >= 2 with Du(0) < k, and a certified width
    delta0 on which Du >= 0 and u(x) < k x hold.

    Certification samples a dense grid of (0, delta0] together with cell
    midpoints, shrinking on failure, and finally halves the passing
    width as safety margin.
    """
    if not validate_jet(jet):
        raise JetError(f"invalid {jet.endpoint} jet {jet.values}")
    if jet.is_zero():
        return 2, 1.0
    a1 = jet.values[0]
    k = 2 if a1 < 2.0 else int(math.floor(a1)) + 1
    u = _taylor_coeffs(jet)
    du = P.polyder(u)
    d = 1.0
    for _ in range(200):
        xs = np.linspace(d / CERT_GRID, d, CERT_GRID)
        xs = np.sort(np.concatenate([xs, 0.5 * (xs[:-1] + xs[1:])]))
        ok = (P.polyval(xs, du) >= 0.0) & (k * xs - P.polyval(xs, u) > 0.0)
        if ok.all():
            return k, d / 2.0
        d = min(d / 2.0, 0.9 * float(xs[~ok][0]))
    raise JetError(f"could not certify a width for jet {jet.values}")


def cap_spec(jet: Jet) -> JetCapSpec:
    k, d0 = choose_k_delta0(jet)
    return JetCapSpec(d0, k, d0, jet)


def sigma(delta, spec: JetCapSpec, table=None) -> Curve:
    """The left cap on [0, delta]: jet formula out to delta/(4k), the line
    (x + delta)/4 up to the blend corner at delta/3, identity after.
    """
    table = table or hkernel.get_kernel()
    jet = spec.jet
    if jet.endpoint != "left":
        raise JetError("sigma needs a left jet")
    if not 0.0 < delta <= spec.delta0:
        raise JetError(
            f"delta={delta} outside the certified window (0, {spec.delta0}]")
    k = spec.k
    w = delta / (4.0 * k)
    blend = CornerPiece(CornerSpec(0.25, 1.0, delta / 3.0, delta / 3.0,
                                   delta / 12.0), table)
    pieces = [
        JetCapPiece(jet.values, k, delta, "left", 1.0, table),
        PolyPiece(w, blend.x0, [(w + delta) / 4.0, 0.25], center=w),
        blend,
        PolyPiece(blend.x1, delta, [blend.x1, 1.0], center=blend.x1),
    ]
    return Curve(pieces, domain=(0.0, delta))


def tau(delta, spec: JetCapSpec, table=None) -> Curve:
    """The right cap on [1 - delta, 1]: the point reflection of the sigma
    built from the reflected jet, tau(x) = 1 - sigma_reflected(1 - x)."""
    table = table or hkernel.get_kernel()
    jet = spec.jet
    if jet.endpoint != "right":
        raise JetError("tau needs a right jet")
    if not 0.0 < delta <= spec.delta0:
        raise JetError(
            f"delta={delta} outside the certified window (0, {spec.delta0}]")
    k = spec.k
    left = jet.reflected()
    cap = JetCapPiece(left.values, k, delta, "right", 1.0, table)
    blend = CornerPiece(CornerSpec(1.0, 0.25, 1.0 - delta / 3.0,
                                   1.0 - delta / 3.0, delta / 12.0), table)
    pieces = [
        PolyPiece(1.0 - delta, blend.x0,
                  [1.0 - delta, 1.0], center=1.0 - delta),
        blend,
        PolyPiece(blend.x1, cap.x0,
                  [(3.0 - delta + blend.x1) / 4.0, 0.25], center=blend.x1),
        cap,
    ]
    return Curve(pieces, domain=(1.0 - delta, 1.0))


def cap_for(jet_or_values, endpoint=None):
    """Convenience: build a JetCapSpec from a Jet or a plain value list."""
    jet = (jet_or_values if isinstance(jet_or_values, Jet)
           else Jet(endpoint, tuple(jet_or_values)))
    if jet.endpoint == "right":
        refl = jet.reflected()
        k, d0 = choose_k_delta0(refl)
        return JetCapSpec(d0, k, d0, jet)
    return cap_spec(jet)
