import json

import numpy as np
import pytest

from iterfeas.curve import (CornerPiece, CornerSpec, ConstPiece, Curve,
                            CurveError, JetCapPiece, PolyPiece,
                            curve_from_json_dict, curve_loads)


def two_step(u, v, t):
    return Curve([ConstPiece(0.0, u, v / u),
                  ConstPiece(u, 1.0, (t - v) / (1.0 - u))])


def test_eval_constant_and_steps():
    const = Curve([ConstPiece(0.0, 1.0, 0.8)])
    assert const.eval(0.3) == 0.8
    f = two_step(0.5, 0.25, 0.55)
    assert f.eval(0.2) == 0.5
    assert abs(f.eval(0.7) - 0.6) < 1e-15
    # left piece owns the breakpoint
    assert f.eval(0.5) == 0.5
    with pytest.raises(CurveError):
        f.eval(1.2)


def test_deriv_linear_and_jump():
    delta = 0.01
    line = Curve([PolyPiece(0.0, 1.0, [0.0, 1.0 / delta])])
    assert line.deriv(0.37) == 100.0
    f = two_step(0.5, 0.25, 0.55)
    assert f.deriv(0.2) == 0.0
    with pytest.raises(CurveError):
        f.deriv(0.5)


def test_integrate_examples():
    f = two_step(0.5, 0.25, 0.55)
    assert abs(f.integrate(0.0, 1.0) - 0.55) < 1e-15
    assert abs(f.integrate(0.0, 0.5) - 0.25) < 1e-15
    one = Curve([ConstPiece(0.0, 1.0, 1.0)])
    assert abs(one.integrate(0.2, 0.7) - 0.5) < 1e-15
    with pytest.raises(CurveError):
        f.integrate(0.7, 0.2)


def test_iterated_integral_examples():
    one = Curve([ConstPiece(0.0, 1.0, 1.0)])
    assert abs(one.iterated_integral_at_1(3) - 1.0 / 6.0) < 1e-15
    a, b = 0.55, 0.2
    u = 0.4
    v = a * u - a + 2 * b
    f = two_step(u, v, a)
    assert abs(f.iterated_integral_at_1(2) - b) < 1e-14
    want = ((a - 2 * b) * u - a + 4 * b) / 6.0
    assert abs(f.iterated_integral_at_1(3) - want) < 1e-14
    with pytest.raises(CurveError):
        one.iterated_integral_at_1(4)


def test_min_deriv_on_grid():
    ident = Curve([PolyPiece(0.0, 1.0, [0.0, 1.0])])
    assert ident.min_deriv_on_grid(100) == 1.0
    const = Curve([ConstPiece(0.0, 1.0, 0.3)])
    assert const.min_deriv_on_grid(100) == 0.0


def test_closed_form_vs_quadrature_random_polys():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        deg = int(rng.integers(0, 9))
        cut = float(rng.uniform(0.2, 0.8))
        c1 = rng.normal(size=deg + 1)
        p1 = PolyPiece(0.0, cut, c1)
        c2 = list(rng.normal(size=max(deg, 1)))
        c2[0] = p1.value(cut)  # stitch
        curve = Curve([p1, PolyPiece(cut, 1.0, c2, center=cut)])
        n = int(rng.integers(1, 4))
        closed = curve.iterated_integral_at_1(n)
        quad = curve.iterated_integral_quad(n)
        assert abs(closed - quad) <= 1e-10


def test_transcendental_moment_path_vs_quadrature():
    rng = np.random.default_rng(5)
    for _ in range(50):
        m1, m2 = np.sort(rng.uniform(-1.0, 2.0, size=2))
        a = float(rng.uniform(0.3, 0.7))
        d = float(10.0 ** rng.uniform(-3, -0.7))
        piece = CornerPiece(CornerSpec(float(m1), float(m2), a,
                                       float(rng.uniform(-1, 1)), d))
        for w in ([1.0], [1.0, -1.0], [0.5, -1.0, 0.5]):
            closed = piece.weighted_integral(np.array(w), 1e-13)
            quad = piece.weighted_integral(np.array(w), 1e-14,
                                           piece.x0, piece.x1)
            assert abs(closed - quad) <= 1e-12
    for orient in ("left", "right"):
        piece = JetCapPiece((0.7, -0.3), 2, 0.2, orient, 1.3)
        for w in ([1.0], [0.25, -1.0], [0.5, -1.0, 0.5]):
            closed = piece.weighted_integral(np.array(w), 1e-13)
            quad = piece.weighted_integral(np.array(w), 1e-14,
                                           piece.x0, piece.x1)
            assert abs(closed - quad) <= 1e-12


def test_nested_integration_matches_weighted_identity():
    rng = np.random.default_rng(23)
    for _ in range(100):
        nsteps = int(rng.integers(1, 9))
        cuts = np.sort(rng.uniform(0.05, 0.95, size=nsteps - 1))
        xs = np.concatenate(([0.0], cuts, [1.0]))
        vals = np.sort(rng.uniform(0.0, 1.0, size=nsteps))
        f = Curve([ConstPiece(xs[i], xs[i + 1], float(vals[i]))
                   for i in range(nsteps)])
        g = f.antiderivative()
        nested = g.iterated_integral_at_1(1)
        assert abs(f.iterated_integral_at_1(2) - nested) <= 1e-10


def test_additivity_of_integrate():
    rng = np.random.default_rng(2)
    curve = Curve([PolyPiece(0.0, 0.6, rng.normal(size=5)),
                   PolyPiece(0.6, 1.0, [0.0, 1.0], center=0.6)],
                  validate=False)
    x0, x1, x2 = 0.1, 0.55, 0.9
    lhs = curve.integrate(x0, x1) + curve.integrate(x1, x2)
    assert abs(lhs - curve.integrate(x0, x2)) <= 1e-12


def test_eval_deriv_consistency_smooth_pieces():
    pieces = [
        PolyPiece(0.0, 1.0, [0.1, 0.5, -0.2, 0.9]),
        CornerPiece(CornerSpec(0.2, 1.4, 0.5, 0.3, 0.5)),
        JetCapPiece((1.0,), 2, 0.8, "left", 1.0),
    ]
    rng = np.random.default_rng(4)
    step = 1e-6
    for piece in pieces:
        xs = rng.uniform(piece.x0 + 2 * step, piece.x1 - 2 * step, size=333)
        for x in xs:
            fd = (piece.value(x + step) - piece.value(x - step)) / (2 * step)
            assert abs(fd - piece.deriv(x)) <= 1e-6


def test_json_round_trip():
    from iterfeas.jets import Jet, cap_spec, sigma
    curve = sigma(0.4, cap_spec(Jet("left", (0.5,)))).scaled(2.0)
    doc = curve.dumps()
    back = curve_loads(doc)
    assert json.loads(doc)["version"] == "curve/1"
    kinds = {p.kind for p in back.pieces}
    assert {"jet_cap", "polynomial", "corner_blend"} <= kinds
    for x in np.linspace(0.0, 0.4, 500):
        assert abs(curve.eval(float(x)) - back.eval(float(x))) <= 1e-15
    steps = two_step(0.3, 0.1, 0.8)
    back = curve_loads(steps.dumps())
    for x in np.linspace(0.0, 1.0, 101):
        assert back.eval(float(x)) == steps.eval(float(x))
    with pytest.raises(CurveError):
        curve_from_json_dict({"version": "curve/2", "domain": [0, 1],
                              "pieces": []})


def test_stitch_validation():
    with pytest.raises(CurveError):
        Curve([PolyPiece(0.0, 0.5, [0.0, 1.0]),
               PolyPiece(0.5, 1.0, [0.7, 1.0], center=0.5)])
    # constant pieces may jump
    Curve([ConstPiece(0.0, 0.5, 0.1), ConstPiece(0.5, 1.0, 0.9)])
    with pytest.raises(CurveError):
        Curve([PolyPiece(0.0, 0.5, [0.0, 1.0]),
               PolyPiece(0.6, 1.0, [0.5, 1.0], center=0.6)])
    with pytest.raises(CurveError):
        PolyPiece(0.0, 1.0, np.ones(10))


def test_scaled_curve():
    f = two_step(0.5, 0.25, 0.55)
    g = f.scaled(3.0)
    assert g.eval(0.2) == 1.5
    assert abs(g.integrate(0.0, 1.0) - 3 * 0.55) < 1e-14
