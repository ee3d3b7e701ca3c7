"""Conformally flat models: the quadric invariant, lapse ODE, dual routes."""

import math

import numpy as np
import pytest

from staticstar.errors import BadParams, DomainError, SignLoss
from staticstar.geometry import EIGHT_PI
from staticstar.numerics import RadialFunction, chebyshev_grid
from staticstar import conformal
from staticstar.conformal import (
    BasicInvariant,
    basic_invariant_eval,
    build_model,
    density_pressure,
    pressure_closed_form,
    solve_lapse,
    witten_lapse,
)


def sqrt_one_plus_u():
    """phi = sqrt(1+u) as an analytic RadialFunction (the witten factor)."""
    return RadialFunction(
        value=lambda u: np.sqrt(1.0 + np.asarray(u, dtype=float)),
        d1=lambda u: 0.5 / np.sqrt(1.0 + np.asarray(u, dtype=float)),
        d2=lambda u: -0.25 * (1.0 + np.asarray(u, dtype=float)) ** -1.5,
        provenance="analytic",
        domain=(-1.0 + 1e-9, math.inf),
    )


class TestBasicInvariant:
    def test_round_sphere_case(self):
        inv = BasicInvariant(1.0, (0.0, 0.0, 0.0), (0.0, 0.0, 0.0))
        x = np.array([1.0, 1.0, 1.0])
        assert basic_invariant_eval(x, inv) == pytest.approx(3.0)
        assert inv.C == 0.0
        g = inv.as_field().gradient(x)
        assert float(g @ g) == pytest.approx(4.0 * inv.tau * 3.0 + inv.C)
        assert np.trace(inv.as_field().hessian(x)) == pytest.approx(6.0)

    def test_plane_case(self):
        inv = BasicInvariant(0.0, (1.0, 0.0, 0.0), (0.0, 0.0, 0.0))
        assert inv.value((2.0, 0.0, 0.0)) == pytest.approx(2.0)
        assert inv.C == 1.0
        assert not inv.degenerate
        np.testing.assert_allclose(inv.point_at(5.0), [5.0, 0.0, 0.0])
        with pytest.raises(DomainError):
            inv.center

    def test_degenerate_case(self):
        inv = BasicInvariant(0.0, (0.0, 0.0), (1.0, 0.0))
        assert inv.degenerate
        with pytest.raises(DomainError):
            inv.point_at(1.0)

    def test_shifted_center(self):
        inv = BasicInvariant(1.0, (2.0, 0.0, 0.0), (0.0, 0.0, 0.0))
        np.testing.assert_allclose(inv.center, [-1.0, 0.0, 0.0])
        assert inv.C == 4.0

    def test_sphere_radius(self):
        inv = BasicInvariant(1.0, (0.0,) * 3, (0.0,) * 3)
        assert inv.sphere_radius(4.0) == pytest.approx(2.0)
        with pytest.raises(DomainError):
            inv.sphere_radius(-1.0)
        flat = BasicInvariant(0.0, (1.0, 0.0), (0.0, 0.0))
        with pytest.raises(DomainError):
            flat.sphere_radius(1.0)

    def test_point_at_direction(self):
        inv = BasicInvariant(1.0, (0.0,) * 3, (0.0,) * 3)
        np.testing.assert_allclose(
            inv.point_at(4.0, direction=(0.0, 0.0, 2.0)), [0.0, 0.0, 2.0]
        )
        with pytest.raises(BadParams):
            inv.point_at(4.0, direction=(0.0, 0.0, 0.0))

    def test_construction_guards(self):
        with pytest.raises(BadParams):
            BasicInvariant(1.0, (1.0, 0.0), (0.0,))
        with pytest.raises(BadParams):
            BasicInvariant(1.0, (), ())
        inv = BasicInvariant(1.0, (0.0,) * 3, (0.0,) * 3)
        with pytest.raises(BadParams):
            inv.as_field(n=4)

    def test_eval_rejects_garbage(self):
        inv = BasicInvariant(1.0, (0.0,) * 3, (0.0,) * 3)
        with pytest.raises(DomainError):
            basic_invariant_eval((math.inf, 0.0, 0.0), inv)


class TestWittenLapse:
    def test_warped_values(self):
        assert witten_lapse(3, 1.0, 0.0, 1.0) == pytest.approx(
            math.sin(math.log(math.cosh(1.0))), rel=1e-15
        )
        assert witten_lapse(3, 1.0, 0.0, 1.0) == pytest.approx(
            0.4203044601423583, rel=1e-14
        )
        assert witten_lapse(3, 0.0, 2.5, 0.0) == 2.5
        with pytest.raises(BadParams):
            witten_lapse(2, 1.0, 0.0, 1.0)

    def test_charts_agree(self):
        # u = sinh^2 r identifies the invariant chart with the warped one
        f_u = conformal._witten_u_lapse(5, 0.7, -0.2, (0.0, 200.0))
        for r in (0.3, 1.0, 2.7):
            u = math.sinh(r) ** 2
            assert f_u(u) == pytest.approx(
                witten_lapse(5, 0.7, -0.2, r), rel=1e-13
            )


class TestSolveLapse:
    def test_matches_closed_form(self):
        f = solve_lapse(sqrt_one_plus_u(), 3, (0.0, 10.0), (0.0, 0.5))
        grid = chebyshev_grid(0.0, 10.0, 256)
        exact = np.sin(0.5 * np.log1p(grid))
        assert np.max(np.abs(f.value(grid) - exact)) <= 1e-8

    def test_second_derivative_is_the_ode(self):
        phi = sqrt_one_plus_u()
        f = solve_lapse(phi, 3, (0.0, 10.0), (0.0, 0.5))
        for u in (0.5, 3.0, 8.0):
            rhs = (f.value(u) * phi.d2(u) - 2.0 * phi.d1(u) * f.d1(u)) / phi.value(u)
            assert f.d2(u) == pytest.approx(rhs, rel=1e-12)

    def test_sign_loss_raise(self):
        one = RadialFunction.constant(1.0, (-math.inf, math.inf))
        with pytest.raises(SignLoss):
            solve_lapse(one, 3, (0.0, 2.0), (1.0, -1.0), on_sign_loss="raise")

    def test_sign_loss_truncates(self):
        one = RadialFunction.constant(1.0, (-math.inf, math.inf))
        f = solve_lapse(one, 3, (0.0, 2.0), (1.0, -1.0))
        assert f.domain[1] == pytest.approx(1.0, abs=1e-6)
        assert f.domain[1] < 1.0
        assert f.value(0.5) == pytest.approx(0.5, abs=1e-9)

    def test_immediate_crossing_cannot_truncate(self):
        one = RadialFunction.constant(1.0, (-math.inf, math.inf))
        with pytest.raises(SignLoss):
            solve_lapse(one, 3, (0.0, 2.0), (0.0, -1.0))

    def test_bad_arguments(self):
        one = RadialFunction.constant(1.0, (-math.inf, math.inf))
        with pytest.raises(BadParams):
            solve_lapse(one, 2, (0.0, 1.0), (1.0, 0.0))
        with pytest.raises(BadParams):
            solve_lapse(one, 3, (1.0, 1.0), (1.0, 0.0))
        with pytest.raises(BadParams):
            solve_lapse(one, 3, (0.0, 1.0), (1.0, 0.0), on_sign_loss="ignore")

    def test_nonpositive_factor_rejected(self):
        dying = RadialFunction(
            value=lambda u: 1.0 - np.asarray(u, dtype=float),
            d1=lambda u: -np.ones_like(np.asarray(u, dtype=float)),
            d2=lambda u: np.zeros_like(np.asarray(u, dtype=float)),
            provenance="analytic",
            domain=(-math.inf, math.inf),
        )
        with pytest.raises(DomainError):
            solve_lapse(dying, 3, (0.0, 2.0), (1.0, 0.0))


class TestDensityPressure:
    """Frozen fluid samples for the standard sine-branch model, n = 3."""

    @pytest.mark.parametrize(
        "u,f,mu8pi,rho8pi",
        [
            (0.5, 0.20134667064605301, 13.0 / 3.0, 4.8197913524635796),
            (3.0, 0.63896127631363480, 2.25, -0.64805514834799596),
            (10.0, 0.93165723782410899, 16.0 / 11.0, -1.0200015466275558),
        ],
    )
    def test_frozen_samples(self, conformal_witten, u, f, mu8pi, rho8pi):
        m = conformal_witten
        assert m.f(u) == pytest.approx(f, rel=1e-12)
        assert EIGHT_PI * m.mu(u) == pytest.approx(mu8pi, rel=1e-12)
        assert EIGHT_PI * m.rho(u) == pytest.approx(rho8pi, rel=1e-12)

    def test_routes_agree(self, conformal_witten):
        m = conformal_witten
        grid = chebyshev_grid(0.05, 9.95, 128)
        via_trace = m.rho(grid)
        via_closed = pressure_closed_form(
            m.phi, m.f, m.invariant, m.lam, m.n, grid
        )
        assert np.max(np.abs(via_trace - via_closed)) <= 1e-12

    def test_cosmological_split(self, conformal_witten):
        m = conformal_witten
        lam = 0.2
        mu0, rho0 = density_pressure(m.phi, m.f, m.invariant, 0.0, m.n, 3.0)
        mu1, rho1 = density_pressure(m.phi, m.f, m.invariant, lam, m.n, 3.0)
        assert mu1 == pytest.approx(mu0 - lam / EIGHT_PI, rel=1e-14)
        assert rho1 == pytest.approx(rho0 + lam / EIGHT_PI, rel=1e-14)

    def test_vanishing_lapse_rejected(self, conformal_witten):
        m = conformal_witten
        with pytest.raises(DomainError):
            density_pressure(m.phi, m.f, m.invariant, 0.0, m.n, 0.0)


class TestBuildModel:
    def test_standard_model(self, conformal_witten):
        m = conformal_witten
        assert m.passed, {k: r.worst for k, r in m.checks.items()}
        assert set(m.checks) == {
            "lapse-ode", "field[on-axis]", "field[off-axis]", "closure",
        }
        assert m.label == "witten" and not m.truncated and not m.degenerate
        assert m.domain == (0.0, 10.0)

    def test_higher_dimension(self):
        m = build_model("witten", n=5, span=(0.0, 6.0))
        assert m.passed, {k: r.worst for k, r in m.checks.items()}

    def test_initial_conditions_honored(self):
        m = build_model("witten", n=3, ic=(0.3, 0.1), run_checks=False)
        assert m.f.value(0.0) == pytest.approx(0.3, abs=1e-12)
        assert m.f.d1(0.0) == pytest.approx(0.1, abs=1e-12)

    def test_unit_preset_is_vacuum_plus_lambda(self):
        lam = 0.4
        m = build_model("unit", n=3, lam=lam, span=(0.0, 5.0))
        assert m.passed
        assert m.mu(2.0) == pytest.approx(-lam / EIGHT_PI, abs=1e-15)
        assert m.rho(2.0) == pytest.approx(lam / EIGHT_PI, abs=1e-15)

    def test_degenerate_invariant_short_circuits(self):
        inv = BasicInvariant(0.0, (0.0,) * 3, (1.0, 0.0, 0.0))
        m = build_model("unit", n=3, invariant=inv)
        assert m.degenerate and m.checks == {}

    def test_custom_factor_goes_through_the_integrator(self):
        m = build_model(sqrt_one_plus_u(), n=3, ic=(0.0, 0.5), span=(0.0, 6.0))
        assert m.label == "custom"
        assert m.passed, {k: r.worst for k, r in m.checks.items()}

    def test_truncation_flagged(self):
        one = RadialFunction.constant(1.0, (-math.inf, math.inf))
        m = build_model(one, n=3, ic=(1.0, -1.0), span=(0.0, 2.0))
        assert m.truncated and m.domain[1] < 2.0
        assert m.passed   # the surviving window is still a solution

    def test_guards(self):
        with pytest.raises(BadParams):
            build_model("witten", n=2)
        with pytest.raises(BadParams):
            build_model("spiral", n=3)
        with pytest.raises(BadParams):
            build_model("witten", n=3, invariant=BasicInvariant(1.0, (0.0,) * 2, (0.0,) * 2))

    def test_no_checks_mode(self):
        m = build_model("witten", n=3, run_checks=False)
        assert m.checks == {} and m.passed
