import math

import numpy as np
import pytest

from staticstar.errors import DerivativeError, DomainError
from staticstar.numerics import (
    RadialFunction,
    ScalarField,
    bisect_root,
    chebyshev_grid,
    fd_derivative,
    find_brackets,
    max_rms,
    refine_root,
    sphere_rule,
)


def test_fd_first_derivative_richardson():
    # Richardson-extrapolated central stencil should hit ~1e-10 on smooth data
    assert abs(fd_derivative(math.sin, 1.2, order=1) - math.cos(1.2)) < 1e-10
    assert abs(fd_derivative(math.exp, 0.3, order=1) - math.exp(0.3)) < 1e-9


def test_fd_second_derivative():
    assert abs(fd_derivative(math.sin, 1.2, order=2) + math.sin(1.2)) < 1e-7


def test_fd_rejects_footprint_outside_domain():
    with pytest.raises(DerivativeError):
        fd_derivative(math.log, 1e-9, order=1, domain=(0.0, math.inf))


def test_fd_bad_order():
    with pytest.raises(ValueError):
        fd_derivative(math.sin, 0.0, order=3)


def test_radial_function_from_callables_provenance():
    rf = RadialFunction.from_callables(lambda r: r**3, domain=(-5.0, 5.0))
    assert rf.provenance == "finite-difference"
    assert abs(rf.d1(2.0) - 12.0) < 1e-8
    assert abs(rf.d2(2.0) - 12.0) < 1e-6

    rf2 = RadialFunction.from_callables(
        lambda r: r**3, d1=lambda r: 3 * r**2, d2=lambda r: 6 * r,
    )
    assert rf2.provenance == "analytic"


def test_radial_function_domain_gate():
    rf = RadialFunction.constant(1.0, domain=(0.0, 2.0))
    rf.check_domain(1.0)
    rf.check_domain(0.0)  # closed endpoints admissible
    with pytest.raises(DomainError):
        rf.check_domain(2.5)


def test_radial_function_restricted():
    rf = RadialFunction.constant(4.0, domain=(0.0, 10.0))
    sub = rf.restricted(1.0, 3.0)
    assert sub.domain == (1.0, 3.0)
    assert sub.value(2.0) == 4.0


def test_scalar_field_from_radial():
    rf = RadialFunction.from_callables(
        lambda r: r**2, d1=lambda r: 2 * r, d2=lambda r: 2.0 + 0 * r,
    )
    field = ScalarField.from_radial_euclidean(rf, 3)
    x = np.array([1.0, 2.0, 2.0])
    assert abs(field.value(x) - 9.0) < 1e-12
    assert np.allclose(field.gradient(x), 2.0 * x)
    assert np.allclose(field.hessian(x), 2.0 * np.eye(3))


def test_scalar_field_compose_chain_rule():
    # F(x) = (|x|^2)^2: gradient 4 |x|^2 x, hessian 4 |x|^2 I + 8 x x^T
    inner = ScalarField(
        value=lambda x: float(np.dot(x, x)),
        gradient=lambda x: 2.0 * np.asarray(x, dtype=float),
        hessian=lambda x: 2.0 * np.eye(len(x)),
        n=3,
    )
    outer = RadialFunction.from_callables(
        lambda u: u**2, d1=lambda u: 2.0 * u, d2=lambda u: 2.0 + 0 * u,
    )
    field = ScalarField.compose(outer, inner)
    x = np.array([1.0, -1.0, 0.5])
    u = float(x @ x)
    assert np.allclose(field.gradient(x), 4.0 * u * x)
    assert np.allclose(field.hessian(x), 4.0 * u * np.eye(3) + 8.0 * np.outer(x, x))


# ---------------------------------------------------------------------------
# grids, brackets, roots
# ---------------------------------------------------------------------------


def test_chebyshev_grid_basic():
    g = chebyshev_grid(0.0, 1.0, 33)
    assert g[0] == 0.0 and g[-1] == 1.0
    assert len(g) == 33
    assert np.all(np.diff(g) > 0)


def test_chebyshev_grid_margin():
    g = chebyshev_grid(0.0, 1.0, 9, margin=0.01)
    assert g[0] == pytest.approx(0.01) and g[-1] == pytest.approx(0.99)


def test_find_brackets_sin():
    grid = np.linspace(0.5, 10.0, 400)
    brackets = find_brackets(math.sin, grid)
    roots = [refine_root(math.sin, a, b) for a, b in brackets]
    assert np.allclose(roots, [math.pi, 2 * math.pi, 3 * math.pi], atol=1e-10)


def test_find_brackets_exact_zero_degenerate():
    grid = np.array([-1.0, 0.0, 1.0])
    brackets = find_brackets(lambda x: x, grid)
    # the exact grid zero is reported as a degenerate bracket
    assert (0.0, 0.0) in brackets
    assert refine_root(lambda x: x, 0.0, 0.0) == 0.0


def test_bisect_root():
    r = bisect_root(lambda x: x * x - 2.0, 0.0, 2.0, ytol=1e-13)
    assert abs(r - math.sqrt(2.0)) < 1e-10


# ---------------------------------------------------------------------------
# sphere quadrature
# ---------------------------------------------------------------------------


def test_sphere_rule_weights_sum_to_sphere_area():
    _, wts = sphere_rule()
    assert abs(wts.sum() - 4.0 * math.pi) < 1e-12


def test_sphere_rule_exact_on_even_monomials():
    pts, wts = sphere_rule()
    # int x^2 dOmega = 4 pi / 3, int x^2 y^2 z^2 dOmega = 4 pi / 105
    assert abs(wts @ pts[:, 0] ** 2 - 4 * math.pi / 3) < 1e-12
    xyz2 = pts[:, 0] ** 2 * pts[:, 1] ** 2 * pts[:, 2] ** 2
    assert abs(wts @ xyz2 - 4 * math.pi / 105) < 1e-13


def test_sphere_rule_kills_odd_and_harmonic_terms():
    pts, wts = sphere_rule()
    assert abs(wts @ pts[:, 2]) < 1e-13
    assert abs(wts @ (3 * pts[:, 2] ** 2 - 1.0)) < 1e-12


def test_max_rms():
    mx, rms = max_rms(np.array([3.0, -4.0]))
    assert mx == 4.0
    assert rms == pytest.approx(math.sqrt(12.5))
