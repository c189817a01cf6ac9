"""Randomized verification suites behind `iterfeas verify`.

Each suite runs a batch of trials against independent oracles (direct
sampling, raw quadrature, exact step-function integrals) and returns a
counter dict; failures stay at zero when the implementation honors the
underlying identities.
"""

import numpy as np

from . import hkernel
from .construct import ConstructConfig, construct
from .corner import hull_check, round_corner
from .curve import CornerSpec, ConstPiece, Curve
from .region import (FeasibleTriple, alpha_solutions, bounds_c, check_beta,
                     classify, sample_strict, snap_classify)

NECESSITY_SLACK = 1e-12


def random_step_values(rng, max_steps=16, lo=0.0, hi=1.0):
    """Jump locations and increasing plateau values for one step curve."""
    nsteps = int(rng.integers(1, max_steps + 1))
    cuts = np.sort(rng.uniform(0.0, 1.0, size=nsteps - 1))
    xs = np.concatenate(([0.0], cuts, [1.0]))
    vals = np.sort(rng.uniform(lo, hi, size=nsteps))
    return xs, vals


def step_integrals(xs, vals):
    """Exact (I f(1), I^2 f(1), I^3 f(1)) for a step function.

    Uses int_0^1 f(t) (1-t)^(k-1)/(k-1)! dt with the plateau antiderivatives
    in closed form.
    """
    left = 1.0 - xs[:-1]
    right = 1.0 - xs[1:]
    a = float(np.dot(vals, left - right))
    b = float(np.dot(vals, left**2 - right**2) / 2.0)
    c = float(np.dot(vals, left**3 - right**3) / 6.0)
    return a, b, c


def step_curve(xs, vals):
    return Curve([ConstPiece(xs[i], xs[i + 1], vals[i])
                  for i in range(len(vals))])


def necessity_violations(a, b, c, slack=NECESSITY_SLACK):
    """Which of the five defining clauses fail beyond the slack."""
    rhs_d = -a * a + 2 * a * b - 4 * b * b + 2 * b
    checks = (
        (0.0, a), (a, 1.0),
        (a * a / 2, b), (b, a / 2),
        (2 * b * b, 3 * a * c),
        (6 * (1 - a) * c, rhs_d),
        (0.0, c), (c, a / 6),
    )
    return [i for i, (lhs, rhs) in enumerate(checks) if lhs > rhs + slack]


def suite_kernel(trials=10000, seed=0):
    table = hkernel.get_kernel()
    failures = 0
    checks = 0
    xs = np.linspace(0.0, 1.0, trials)
    checks += 1
    failures += abs(table.H(1.0) - 0.5) > 1e-12
    checks += 1
    failures += float(np.max(np.abs(hkernel.h(xs) + hkernel.h(1 - xs) - 1))) > 1e-14
    checks += 1
    flat = xs[xs <= 0.0125]
    failures += float(np.max(np.abs(hkernel.h(flat)))) > 1e-12
    checks += 1
    refl = max(abs(table.H(1 - s) - (0.5 - s + table.H(s)))
               for s in np.linspace(0.01, 0.99, 99))
    failures += refl > 2 * table.accuracy
    checks += 1
    inner = xs[(xs > 0.01) & (xs < 0.99)]
    fd = (hkernel.h(inner + 1e-7) - hkernel.h(inner - 1e-7)) / 2e-7
    failures += float(np.max(np.abs(fd - hkernel.dh(inner)))) > 1e-6
    return {"suite": "kernel", "trials": trials, "checks": checks,
            "failures": int(failures)}


def suite_region(trials=1000, seed=0):
    failures = 0
    checks = 0
    for k in range(65):
        z = k / 64
        for tri in alpha_solutions(z):
            checks += 1
            _, _, eq_c, eq_d = check_beta(*tri)
            failures += not (eq_c and eq_d)
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        a = float(rng.uniform(0.02, 0.98))
        b = float(rng.uniform(a * a / 2, a / 2))
        if b in (a * a / 2, a / 2):
            continue
        checks += 1
        l, r = bounds_c(a, b)
        failures += not l < r
    for s in range(trials):
        t = sample_strict(s)
        rep = classify(t)
        checks += 1
        failures += rep.row != 7 or not rep.strict
        holds_c, holds_d, _, _ = check_beta(t.c, t.b, t.a)
        checks += 1
        failures += not (holds_c and holds_d)
    for a in np.linspace(0.05, 0.95, 19):
        a = float(a)
        for b in (a * a / 2, a / 2):
            l, r = bounds_c(a, b)
            checks += 1
            failures += abs(r - l) > 1e-12
    return {"suite": "region", "trials": trials, "checks": checks,
            "failures": int(failures)}


def suite_corners(trials=1000, seed=0):
    rng = np.random.default_rng(seed)
    failures = 0
    checks = 0
    for _ in range(trials):
        m1, m2 = np.sort(rng.uniform(-2.0, 3.0, size=2))
        a = float(rng.uniform(-1.0, 1.0))
        c = float(rng.uniform(-1.0, 1.0))
        d = float(10.0 ** rng.uniform(-4, 0))
        spec = CornerSpec(float(m1), float(m2), a, c, d)
        curve = round_corner(spec)
        checks += 1
        edge = max(abs(curve.eval(spec.a - d) - spec.line_value(spec.a - d)),
                   abs(curve.eval(spec.a + d) - spec.line_value(spec.a + d)))
        failures += edge > 1e-12
        xs = np.linspace(spec.a - d, spec.a + d, 41)
        ds = np.array([curve.deriv(float(x)) for x in xs])
        checks += 1
        failures += not (np.all(ds >= m1 - 1e-10) and np.all(ds <= m2 + 1e-10))
        if m1 < m2:
            checks += 1
            failures += not np.all(np.diff(ds) > -1e-13)
        checks += 1
        failures += not hull_check(spec, 101)
        shift = CornerSpec(float(m1), float(m2), a + 0.3, c - 0.2, d)
        shifted = round_corner(shift)
        checks += 1
        inner = np.linspace(spec.a - 0.999 * d, spec.a + 0.999 * d, 41)
        trans = max(abs(shifted.eval(float(x) + 0.3) - (curve.eval(float(x)) - 0.2))
                    for x in inner)
        failures += trans > 1e-12
    return {"suite": "corners", "trials": trials, "checks": checks,
            "failures": int(failures)}


def suite_necessity(trials=1000, seed=0, slack=NECESSITY_SLACK):
    rng = np.random.default_rng(seed)
    failures = 0
    checks = 0
    for _ in range(trials):
        xs, vals = random_step_values(rng)
        a, b, c = step_integrals(xs, vals)
        checks += 1
        failures += bool(necessity_violations(a, b, c, slack))
    # the degenerate families must land on their equality rows
    for i in range(max(1, trials // 10)):
        m = float(rng.uniform(0.1, 0.9))
        u = float(rng.uniform(0.1, 0.9))
        cases = (
            (np.array([0.0, 1.0]), np.array([m]), 4),
            (np.array([0.0, u, 1.0]), np.array([0.0, m]), 5),
            (np.array([0.0, u, 1.0]), np.array([m, 1.0]), 6),
        )
        for xs, vals, row in cases:
            t = FeasibleTriple(*step_integrals(xs, vals))
            checks += 1
            failures += snap_classify(t, 1e-12).row != row
    checks += 2
    failures += snap_classify(FeasibleTriple(*step_integrals(
        np.array([0.0, 1.0]), np.array([0.0]))), 1e-12).row != 1
    failures += snap_classify(FeasibleTriple(*step_integrals(
        np.array([0.0, 1.0]), np.array([1.0]))), 1e-12).row != 2
    return {"suite": "necessity", "trials": trials, "checks": checks,
            "failures": int(failures)}


def suite_construct(trials=20, seed=0, tol=1e-7):
    cfg = ConstructConfig()
    failures = 0
    checks = 0
    for s in range(seed, seed + trials):
        target = sample_strict(s)
        res = construct(target, cfg)
        checks += 1
        errs = [abs(x - y) for x, y in zip(res.achieved.as_tuple(),
                                           target.as_tuple())]
        failures += max(errs) > tol
        checks += 1
        failures += not res.curve.min_deriv_on_grid(10000) > 0
        p = res.params
        checks += 1
        failures += not abs(p["t"] - target.a) < 6 * p["delta"]
        checks += 1
        vstar = target.a * p["u"] - target.a + 2 * target.b
        failures += not abs(p["v"] - vstar) < 2 * p["theta"]
    return {"suite": "construct", "trials": trials, "checks": checks,
            "failures": int(failures)}


SUITES = {
    "kernel": suite_kernel,
    "region": suite_region,
    "corners": suite_corners,
    "necessity": suite_necessity,
    "construct": suite_construct,
}


def run_suite(name, trials=None, seed=0):
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    kwargs = {"seed": seed}
    if trials is not None:
        kwargs["trials"] = trials
    out = SUITES[name](**kwargs)
    out["passed"] = out["failures"] == 0
    return out
