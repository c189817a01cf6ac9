import numpy as np
import pytest

from iterfeas.region import bounds_c
from iterfeas.stepfn import (ExtremalData, StepError, StepParams, extremal,
                             in_triangle, line_v, make_two_step,
                             solve_u_on_line, third_integral_on_line)
from iterfeas.verify import random_step_values, step_integrals


def test_make_two_step_examples():
    p = StepParams(0.5, 0.25, 0.55)
    f = make_two_step(p)
    assert f.eval(0.1) == 0.5
    assert abs(f.eval(0.9) - 0.6) < 1e-15
    assert abs(f.integrate(0.0, 1.0) - 0.55) < 1e-15
    assert abs(f.integrate(0.0, 0.5) - 0.25) < 1e-15
    # v = a u gives the constant function
    const = make_two_step(StepParams(0.3, 0.24, 0.8))
    assert const.eval(0.1) == pytest.approx(0.8, abs=1e-15)
    assert const.eval(0.9) == pytest.approx(0.8, abs=1e-15)
    with pytest.raises(StepError):
        StepParams(1.0, 0.2, 0.5)


def test_in_triangle_examples():
    assert in_triangle(0.5, 0.2, 0.55, strict=True)
    assert not in_triangle(0.5, 0.275, 0.55, strict=True)
    assert in_triangle(0.5, 0.275, 0.55, strict=False)
    # a = 1: the region degenerates to the diagonal
    assert not in_triangle(0.5, 0.5, 1.0, strict=True)
    assert in_triangle(0.5, 0.5, 1.0, strict=False)
    assert not in_triangle(0.5, 0.4, 1.0, strict=False)


def test_line_v_examples():
    assert abs(line_v(0.4, 0.55, 0.2) - 0.07) < 1e-16
    a, b = 0.55, 0.2
    u1 = 1 - 2 * b / a
    assert abs(line_v(u1, a, b)) < 1e-15
    assert line_v(1.0, a, b) == 2 * b


def test_extremal_values():
    ext = extremal(0.55, 0.2)
    assert ext == ExtremalData(
        u1=pytest.approx(0.2727272727272727, abs=1e-16),
        v1=0.0,
        u2=pytest.approx(2 / 3, abs=1e-15),
        v2=pytest.approx(0.21666666666666667, abs=1e-15),
        l=pytest.approx(0.04848484848484849, abs=1e-16),
        r=pytest.approx(0.058333333333333334, abs=1e-16))
    # degenerate b: the segment collapses to (1 - a, 0)
    a = 0.55
    ext = extremal(a, a * a / 2)
    assert abs(ext.u1 - (1 - a)) < 1e-15
    assert abs(ext.u2 - (1 - a)) < 1e-12
    assert ext.v1 == 0.0 and abs(ext.v2) < 1e-15
    # second step of the upper extremal function has value 1
    ext = extremal(0.55, 0.2)
    assert abs((0.55 - ext.v2) / (1 - ext.u2) - 1.0) < 1e-12
    with pytest.raises(StepError):
        extremal(0.55, 0.3)


def test_third_integral_closed_form():
    a, b = 0.55, 0.2
    ext = extremal(a, b)
    assert abs(third_integral_on_line(ext.u1, a, b) - ext.l) < 1e-15
    assert abs(third_integral_on_line(ext.u2, a, b) - ext.r) < 1e-15
    got = third_integral_on_line(0.4, a, b)
    assert abs(got - 0.051666666666666666) < 1e-15
    curve = make_two_step(StepParams(0.4, line_v(0.4, a, b), a))
    assert abs(curve.iterated_integral_at_1(3) - got) < 1e-14


def test_solve_u_on_line():
    a, b = 0.55, 0.2
    ext = extremal(a, b)
    assert abs(solve_u_on_line(a, b, ext.l) - ext.u1) < 1e-12
    assert abs(solve_u_on_line(a, b, ext.r) - ext.u2) < 1e-12
    assert abs(solve_u_on_line(a, b, 0.0525) - 0.43333333333333335) < 1e-12
    with pytest.raises(StepError):
        solve_u_on_line(0.5, 0.25, 0.01)


def test_oracle_agreement_random():
    rng = np.random.default_rng(31)
    for _ in range(1000):
        a = float(rng.uniform(0.1, 0.9))
        b = float(rng.uniform(a * a / 2 * 1.01, a / 2 * 0.99))
        ext = extremal(a, b)
        u = float(rng.uniform(ext.u1 * 1.001, ext.u2 * 0.999))
        v = line_v(u, a, b)
        curve = make_two_step(StepParams(u, v, a))
        assert abs(third_integral_on_line(u, a, b)
                   - curve.iterated_integral_at_1(3)) <= 1e-10


def test_monotone_in_u_and_triangle_consistency():
    a, b = 0.62, 0.22
    ext = extremal(a, b)
    us = np.linspace(ext.u1 + 1e-9, ext.u2 - 1e-9, 50)
    vals = [third_integral_on_line(float(u), a, b) for u in us]
    assert all(x < y for x, y in zip(vals, vals[1:]))
    for u in np.linspace(0.01, 0.99, 99):
        u = float(u)
        inside = in_triangle(u, line_v(u, a, b), a, strict=True)
        assert inside == (ext.u1 < u < ext.u2)


def test_necessity_sandwich_random_step_curves():
    rng = np.random.default_rng(210)
    for _ in range(1000):
        xs, vals = random_step_values(rng)
        a, b, c = step_integrals(xs, vals)
        if not (0.001 < a < 0.999):
            continue
        if not a * a / 2 <= b <= a / 2:
            continue
        if b in (a * a / 2, a / 2):
            continue
        l, r = bounds_c(a, b)
        assert l - 1e-12 <= c <= r + 1e-12
