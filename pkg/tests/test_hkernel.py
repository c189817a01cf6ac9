import numpy as np
import pytest

from iterfeas import hkernel
from iterfeas._quad import adaptive_gl


@pytest.fixture(scope="module")
def table():
    return hkernel.get_kernel()


def test_endpoint_values():
    assert hkernel.h(0.0) == 0.0
    assert hkernel.h(1.0) == 1.0
    assert hkernel.h(-0.5) == 0.0
    assert hkernel.h(2.3) == 1.0
    assert abs(hkernel.h(0.5) - 0.5) < 1e-15
    assert abs(hkernel.h(0.25) + hkernel.h(0.75) - 1.0) < 1e-15


def test_symmetry_grid():
    xs = np.linspace(0.0, 1.0, 10000)
    assert np.max(np.abs(hkernel.h(xs) + hkernel.h(1.0 - xs) - 1.0)) <= 1e-14


def test_flatness_near_endpoints():
    # the double exponential is below 1e-12 out to x ~ 0.013
    xs = np.linspace(0.0, 0.0125, 500)
    assert np.max(np.abs(hkernel.h(xs))) <= 1e-12
    assert np.max(np.abs(1.0 - hkernel.h(1.0 - xs))) <= 1e-12


def test_dh_endpoints_and_sign():
    assert hkernel.dh(0.0) == 0.0
    assert hkernel.dh(1.0) == 0.0
    assert hkernel.dh(0.5) > 0.0
    assert hkernel.dh(0.3) == hkernel.dh(0.7)
    xs = np.linspace(0.05, 0.95, 200)
    assert np.all(hkernel.dh(xs) > 0.0)


def test_dh_matches_finite_differences():
    xs = np.linspace(0.011, 0.989, 1000)
    step = 1e-7
    fd = (hkernel.h(xs + step) - hkernel.h(xs - step)) / (2 * step)
    assert np.max(np.abs(fd - hkernel.dh(xs))) <= 1e-6


def test_H_endpoints(table):
    assert table.H(0.0) == 0.0
    assert table.H(-1.0) == 0.0
    assert abs(table.H(1.0) - 0.5) <= 1e-12
    assert abs(table.H(1.5) - 1.0) < 1e-15  # linear continuation


def test_H_reflection(table):
    for s in np.linspace(0.005, 0.995, 199):
        lhs = table.H(1.0 - s)
        rhs = 0.5 - s + table.H(s)
        assert abs(lhs - rhs) <= 2 * table.accuracy


def test_H_against_quadrature(table):
    for s in (0.07, 0.2, 0.55, 0.81, 0.999):
        ref = adaptive_gl(hkernel.h, 0.0, s, 1e-15)
        assert abs(table.H(s) - ref) <= table.accuracy


def test_H_strictly_increasing_on_nodes(table):
    inner = table.cum[(table.nodes > 0.02) & (table.nodes < 0.98)]
    assert np.all(np.diff(inner) > 0)


def test_moments_match_quadrature(table):
    for j in (0, 1, 2, 5, 9):
        ref = adaptive_gl(lambda t, j=j: hkernel.h(t) * t**j, 0.0, 1.0, 1e-15)
        assert abs(table.h_moments[j] - ref) <= 1e-13
    for j in (0, 1, 4):
        ref = adaptive_gl(lambda t, j=j: np.array([table.H(v) for v in
                                                   np.atleast_1d(t)]) * t**j,
                          0.0, 1.0, 1e-13)
        assert abs(table.H_moments[j] - ref) <= 1e-12
