"""Property-based checks of the structural invariants."""

import math

import numpy as np
from hypothesis import given, settings, strategies as st

from staticstar import conformal, quasilocal
from staticstar.energy import scan_conditions
from staticstar.geometry import to_geometric, to_physical
from staticstar.numerics import RadialFunction, chebyshev_grid, fd_derivative, max_rms

finite = st.floats(min_value=-10.0, max_value=10.0,
                   allow_nan=False, allow_infinity=False)
coeffs = st.lists(st.floats(min_value=-2.0, max_value=2.0,
                            allow_nan=False, allow_infinity=False),
                  min_size=2, max_size=5)


@given(coeffs, st.floats(min_value=0.5, max_value=2.0))
def test_fd_matches_polynomial_derivative(cs, r):
    poly = np.polynomial.Polynomial(cs)
    got = fd_derivative(lambda x: float(poly(x)), r, order=1,
                        domain=(0.0, 3.0))
    want = float(poly.deriv()(r))
    assert abs(got - want) <= 1e-6 * max(1.0, abs(want))


@given(finite, finite, st.floats(min_value=-1.0, max_value=1.0,
                                 allow_nan=False, allow_infinity=False))
def test_unit_bridge_round_trip(mu, rho, lam):
    mu_g, rho_g = to_geometric(mu, rho, lam)
    mu_p, rho_p = to_physical(mu_g, rho_g, lam)
    assert math.isclose(mu_p, mu, rel_tol=1e-12, abs_tol=1e-12)
    assert math.isclose(rho_p, rho, rel_tol=1e-12, abs_tol=1e-12)


@given(st.lists(st.tuples(finite, finite), min_size=1, max_size=30))
def test_condition_implications(pairs):
    grid = np.arange(1.0, 1.0 + len(pairs))
    mu = np.array([p[0] for p in pairs])
    scan = scan_conditions(lambda r: mu[int(r - 1.0)],
                           lambda r: pairs[int(r - 1.0)][1], grid)
    assert (not scan.dec) or scan.wec
    assert (not scan.wec) or scan.nec
    if not (scan.nec and scan.wec and scan.dec):
        assert scan.first_violation is not None


@given(st.lists(finite, min_size=1, max_size=50))
def test_max_dominates_rms(vals):
    mx, rms = max_rms(np.array(vals))
    assert mx >= rms - 1e-15 and rms >= 0.0


@given(st.floats(min_value=0.1, max_value=1e3),
       st.floats(min_value=0.0, max_value=100.0),
       st.floats(min_value=0.0, max_value=100.0))
def test_hawking_mass_monotone_in_willmore(area, w1, dw):
    m1 = quasilocal.hawking_mass(area, w1)
    m2 = quasilocal.hawking_mass(area, w1 + dw)
    assert m2 <= m1 + 1e-15


@given(st.integers(min_value=3, max_value=6),
       st.floats(min_value=-2.0, max_value=2.0, allow_nan=False),
       st.floats(min_value=-2.0, max_value=2.0, allow_nan=False),
       st.floats(min_value=0.1, max_value=3.0))
def test_witten_charts_agree(n, A, B, r):
    u = math.sinh(r) ** 2
    in_u = conformal._witten_u_lapse(n, A, B, (0.0, 150.0))(u)
    in_r = conformal.witten_lapse(n, A, B, r)
    assert abs(in_u - in_r) <= 1e-10 * max(1.0, abs(in_r))


@given(st.floats(min_value=0.0, max_value=5.0),
       st.floats(min_value=0.05, max_value=3.0),
       st.floats(min_value=-5.0, max_value=5.0),
       st.floats(min_value=-5.0, max_value=5.0))
def test_classification_matches_window(kappa, c, rho0, h):
    cls, win = quasilocal.sphere_classification(h, kappa, c, rho0)
    disc = kappa * kappa + c * c * rho0
    if disc < 0.0:
        assert cls is quasilocal.SphereClass.INDETERMINATE and win is None
    else:
        lo, hi = win
        inside = lo <= h <= hi
        assert (cls is quasilocal.SphereClass.TORUS_WINDOW) == inside


@given(st.floats(min_value=-3.0, max_value=3.0),
       st.floats(min_value=0.01, max_value=5.0),
       st.integers(min_value=8, max_value=64))
def test_chebyshev_grid_shape(lo, width, n):
    grid = chebyshev_grid(lo, lo + width, n)
    assert len(grid) == n
    assert grid[0] == lo and grid[-1] == lo + width
    assert np.all(np.diff(grid) > 0.0)


@given(st.floats(min_value=0.1, max_value=4.0),
       st.lists(st.floats(min_value=-3.0, max_value=3.0,
                          allow_nan=False, allow_infinity=False),
                min_size=6, max_size=6))
def test_invariant_identities(tau, parts):
    inv = conformal.BasicInvariant(tau, tuple(parts[:3]), tuple(parts[3:]))
    x = np.array([0.3, -1.2, 0.7])
    u = conformal.basic_invariant_eval(x, inv)   # raises if identities fail
    manual = sum(tau * xi * xi + a * xi + b
                 for xi, a, b in zip(x, inv.alpha, inv.beta))
    assert math.isclose(u, manual, rel_tol=1e-12, abs_tol=1e-12)


@settings(max_examples=5, deadline=None)
@given(st.floats(min_value=-2.0, max_value=2.0, allow_nan=False),
       st.floats(min_value=-2.0, max_value=2.0, allow_nan=False),
       st.floats(min_value=-1.5, max_value=1.5, allow_nan=False))
def test_lapse_ode_is_linear(f0, fp0, scale):
    phi = RadialFunction(
        value=lambda u: np.sqrt(1.0 + np.asarray(u, dtype=float)),
        d1=lambda u: 0.5 / np.sqrt(1.0 + np.asarray(u, dtype=float)),
        d2=lambda u: -0.25 * (1.0 + np.asarray(u, dtype=float)) ** -1.5,
        provenance="analytic",
        domain=(-1.0 + 1e-9, math.inf),
    )
    span = (0.0, 2.0)
    base = conformal.solve_lapse(phi, 3, span, (1.0, 0.25))
    if f0 <= 0.0:
        return   # starts at or below zero: no lapse to superpose
    try:
        other = conformal.solve_lapse(phi, 3, span, (f0, fp0),
                                      on_sign_loss="raise")
    except conformal.SignLoss:
        return   # crosses zero inside the span: truncated, not comparable
    combined_ic = (1.0 + scale * f0, 0.25 + scale * fp0)
    if combined_ic[0] <= 0.0:
        return   # the combined lapse may start non-positive: skip quietly
    try:
        combined = conformal.solve_lapse(phi, 3, span, combined_ic,
                                         on_sign_loss="raise")
    except conformal.SignLoss:
        return
    for u in (0.5, 1.5):
        want = base.value(u) + scale * other.value(u)
        assert abs(combined.value(u) - want) <= 1e-6 * max(1.0, abs(want))
