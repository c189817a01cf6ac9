import numpy as np
import pytest

from iterfeas import hkernel
from iterfeas._quad import adaptive_gl
from iterfeas.corner import PolylinePlan, hull_check, round_corner, round_polyline
from iterfeas.curve import CornerSpec, CurveError


def test_equal_slopes_give_the_line():
    spec = CornerSpec(0.7, 0.7, 0.3, 0.1, 0.2)
    curve = round_corner(spec)
    assert curve.pieces[0].kind == "polynomial"
    for x in np.linspace(0.1, 0.5, 33):
        assert abs(curve.eval(float(x)) - spec.line_value(float(x))) < 1e-15


def test_matches_broken_line_at_window_edges():
    rng = np.random.default_rng(8)
    for _ in range(100):
        m1, m2 = rng.uniform(-2.0, 3.0, size=2)
        spec = CornerSpec(float(m1), float(m2), float(rng.uniform(-1, 1)),
                          float(rng.uniform(-1, 1)),
                          float(10.0 ** rng.uniform(-4, 0)))
        curve = round_corner(spec)
        for x in (spec.a - spec.delta, spec.a + spec.delta):
            assert abs(curve.eval(x) - spec.line_value(x)) <= 1e-12


def test_center_value_from_kernel_integral():
    curve = round_corner(CornerSpec(0.0, 1.0, 0.0, 0.0, 1.0))
    ref = 2.0 * adaptive_gl(hkernel.h, 0.0, 0.5, 1e-15)
    assert abs(curve.eval(0.0) - ref) <= 1e-13


def test_derivative_range_and_monotonicity():
    spec = CornerSpec(0.25, 1.0, 0.5, 0.5, 0.125)
    curve = round_corner(spec)
    xs = np.linspace(spec.a - spec.delta, spec.a + spec.delta, 201)
    ds = np.array([curve.deriv(float(x)) for x in xs])
    assert np.all(ds >= spec.m1 - 1e-10)
    assert np.all(ds <= spec.m2 + 1e-10)
    inner = ds[5:-5]
    assert np.all(np.diff(inner) > 0)
    assert abs(curve.deriv(spec.a - spec.delta) - spec.m1) < 1e-12
    assert abs(curve.deriv(spec.a + spec.delta) - spec.m2) < 1e-12


def test_translation_equivariance():
    rng = np.random.default_rng(19)
    base = CornerSpec(0.3, 1.7, 0.0, 0.0, 0.2)
    curve = round_corner(base)
    for _ in range(10):
        da, dc = rng.uniform(-2.0, 2.0, size=2)
        shifted = round_corner(CornerSpec(0.3, 1.7, float(da), float(dc), 0.2))
        for x in np.linspace(-0.2, 0.2, 101):
            got = shifted.eval(float(x) + float(da))
            want = curve.eval(float(x)) + float(dc)
            assert abs(got - want) <= 1e-12


def test_stitch_smoothness_across_window_edges():
    spec = CornerSpec(0.25, 1.0, 0.5, 0.5, 0.125)
    curve = round_corner(spec)
    step = 1e-4
    for edge, slope in ((spec.a - spec.delta, spec.m1),
                        (spec.a + spec.delta, spec.m2)):
        vals = np.array([curve.eval(edge + k * step) if spec.a - spec.delta
                         <= edge + k * step <= spec.a + spec.delta
                         else spec.line_value(edge + k * step)
                         for k in (-2, -1, 0, 1, 2)])
        d1 = (vals[3] - vals[1]) / (2 * step)
        d2 = (vals[3] - 2 * vals[2] + vals[1]) / step**2
        assert abs(d1 - slope) <= 1e-6
        assert abs(d2) <= 1e-2 * max(1.0, abs(slope) / step)  # no kink


def test_hull_check_cases():
    assert hull_check(CornerSpec(0.2, 1.5, 0.4, 0.3, 0.1), 1000)
    assert hull_check(CornerSpec(0.7, 0.7, 0.4, 0.3, 0.1), 1000)
    assert hull_check(CornerSpec(1.0, 100.0, 0.0, 0.0, 0.01), 1000)
    assert hull_check(CornerSpec(1.5, 0.2, 0.4, 0.3, 0.1), 1000)
    with pytest.raises(CurveError):
        hull_check(CornerSpec(0.2, 1.5, 0.4, 0.3, 0.1), 2)


def test_polyline_single_corner_reduces_to_round_corner():
    plan = PolylinePlan(points=((0.5, 0.2),), slope_in=0.1, slope_out=0.9,
                        eta=0.05, domain=(0.0, 1.0))
    curve = round_polyline(plan)
    spec = CornerSpec(0.1, 0.9, 0.5, 0.2, 0.05)
    single = round_corner(spec)
    for x in np.linspace(0.0, 1.0, 301):
        x = float(x)
        want = (single.eval(x) if abs(x - 0.5) <= 0.05
                else spec.line_value(x))
        assert abs(curve.eval(x) - want) <= 1e-13


def test_polyline_collinear_is_straight():
    plan = PolylinePlan(points=((0.3, 0.3), (0.5, 0.5), (0.7, 0.7)),
                        slope_in=1.0, slope_out=1.0, eta=0.05,
                        domain=(0.0, 1.0))
    curve = round_polyline(plan)
    for x in np.linspace(0.0, 1.0, 200):
        assert abs(curve.eval(float(x)) - float(x)) <= 1e-14


def test_polyline_window_edges_exact():
    pts = ((0.2, 0.1), (0.5, 0.2), (0.8, 0.6))
    plan = PolylinePlan(points=pts, slope_in=0.5, slope_out=1.2,
                        eta=0.02, domain=(0.0, 1.0))
    curve = round_polyline(plan)
    slopes = [0.5, 1 / 3, 4 / 3, 1.2]
    for i, (x, y) in enumerate(pts):
        lo, hi = x - plan.eta, x + plan.eta
        assert abs(curve.eval(lo) - (y + slopes[i] * (lo - x))) <= 1e-13
        assert abs(curve.eval(hi) - (y + slopes[i + 1] * (hi - x))) <= 1e-13


def test_polyline_overlap_rejected():
    with pytest.raises(CurveError) as err:
        PolylinePlan(points=((0.3, 0.1), (0.35, 0.2)), slope_in=1.0,
                     slope_out=1.0, eta=0.05, domain=(0.0, 1.0))
    assert "0" in str(err.value) and "1" in str(err.value)
