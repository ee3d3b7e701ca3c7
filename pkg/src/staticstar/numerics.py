"""Shared numerical kernels: radial functions, derivatives, grids, roots, quadrature.

Everything geometric in this package is assembled from two building blocks:

* :class:`RadialFunction` — a scalar function of one radial variable together
  with its first two derivatives and a provenance tag saying whether those
  derivatives are analytic or produced by the finite-difference fallback.
* :class:`ScalarField` — a scalar function on R^n with gradient and Hessian,
  used by the conformally flat machinery.

The finite-difference fallback is deliberately boring and well-characterised:
4th-order central stencils with step ``h = max(1e-5, 1e-5 |r|)`` and one
Richardson halving, which eliminates the leading h^4 error term.  On smooth
functions this lands comfortably below the 1e-6 agreement tolerance the
residual checks assume.
"""

from __future__ import annotations

import dataclasses
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import DerivativeError, DomainError

__all__ = [
    "EPS_DOM",
    "DEFAULT_GRID_N",
    "RadialFunction",
    "ScalarField",
    "fd_derivative",
    "chebyshev_grid",
    "find_brackets",
    "refine_root",
    "bisect_root",
    "sphere_rule",
    "max_rms",
]

# Domain guard used across the package: evaluators refuse points closer than
# this to a declared singular boundary (horizon, axis, lapse zero).
EPS_DOM = 1e-9

# Default resolution for residual grids.
DEFAULT_GRID_N = 512

_FD_BASE_STEP = 1e-5
# Second derivatives divide by h^2, so roundoff forces a much larger step:
# with h ~ 5e-4 truncation (~h^4) and cancellation (~eps/h^2) balance near 1e-9.
_FD_BASE_STEP_D2 = 5e-4


# ----------------------------------------------------------------------------
# finite differences
# ----------------------------------------------------------------------------

def _fd_once(func: Callable, r: np.ndarray, h: np.ndarray, order: int) -> np.ndarray:
    """One 4th-order central stencil evaluation at step h (vectorized)."""
    fm2 = np.asarray(func(r - 2.0 * h), dtype=float)
    fm1 = np.asarray(func(r - h), dtype=float)
    fp1 = np.asarray(func(r + h), dtype=float)
    fp2 = np.asarray(func(r + 2.0 * h), dtype=float)
    if order == 1:
        return (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h)
    f0 = np.asarray(func(r), dtype=float)
    return (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h)


def fd_derivative(
    func: Callable,
    r,
    order: int = 1,
    domain: tuple[float, float] | None = None,
):
    """Derivative of ``func`` at ``r`` by 4th-order central differences.

    One Richardson halving is applied, ``(16 D(h/2) - D(h)) / 15``, so the
    effective truncation order is six.  ``order`` is 1 or 2.

    Raises
    ------
    DerivativeError
        If the stencil footprint ``r ± 2h`` leaves ``domain``, or any sampled
        value is non-finite.
    """
    if order not in (1, 2):
        raise ValueError(f"order must be 1 or 2, got {order}")
    r_arr = np.asarray(r, dtype=float)
    scalar = r_arr.ndim == 0
    base = _FD_BASE_STEP if order == 1 else _FD_BASE_STEP_D2
    if scalar:
        # keep plain floats so scalar-only callables (math.sin, ...) work
        r_s = float(r_arr)
        h = max(base, base * abs(r_s))
        if domain is not None and (r_s - 2.0 * h < domain[0] or r_s + 2.0 * h > domain[1]):
            raise DerivativeError(
                f"finite-difference stencil leaves domain {domain}"
            )
        coarse = _fd_once(func, r_s, h, order)
        fine = _fd_once(func, r_s, 0.5 * h, order)
        out = (16.0 * float(fine) - float(coarse)) / 15.0
        if not math.isfinite(out):
            raise DerivativeError("non-finite values inside finite-difference stencil")
        return out
    h = np.maximum(base, base * np.abs(r_arr))
    if domain is not None:
        lo, hi = domain
        if np.any(r_arr - 2.0 * h < lo) or np.any(r_arr + 2.0 * h > hi):
            raise DerivativeError(
                f"finite-difference stencil leaves domain ({lo}, {hi})"
            )
    coarse = _fd_once(func, r_arr, h, order)
    fine = _fd_once(func, r_arr, 0.5 * h, order)
    out = (16.0 * fine - coarse) / 15.0
    if not np.all(np.isfinite(out)):
        raise DerivativeError("non-finite values inside finite-difference stencil")
    return out


# ----------------------------------------------------------------------------
# radial functions
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class RadialFunction:
    """A scalar function of one radial variable with two derivatives.

    Attributes
    ----------
    value, d1, d2:
        Vectorized callables (accept float or ndarray).
    provenance:
        ``"analytic"`` if both derivatives were supplied in closed form,
        ``"finite-difference"`` if either fell back to the stencil.
    domain:
        Open interval ``(lo, hi)`` on which evaluation is admissible; ``hi``
        may be ``math.inf``.
    """

    value: Callable
    d1: Callable
    d2: Callable
    provenance: str = "analytic"
    domain: tuple[float, float] = (-math.inf, math.inf)

    def __post_init__(self):
        if self.provenance not in ("analytic", "finite-difference"):
            raise ValueError(f"bad provenance {self.provenance!r}")
        lo, hi = self.domain
        if not lo < hi:
            raise ValueError(f"empty domain {self.domain}")

    # -- construction --------------------------------------------------------

    @classmethod
    def from_callables(
        cls,
        value: Callable,
        d1: Callable | None = None,
        d2: Callable | None = None,
        domain: tuple[float, float] = (-math.inf, math.inf),
    ) -> "RadialFunction":
        """Build a RadialFunction, filling missing derivatives by differencing.

        Missing ``d2`` with analytic ``d1`` differences ``d1`` once (keeping
        the error budget of a first derivative); with no ``d1`` either, ``d2``
        uses one order-2 stencil on ``value`` rather than nesting two order-1
        stencils (which would square the roundoff).
        """
        analytic = d1 is not None and d2 is not None
        had_d1 = d1 is not None
        if d1 is None:
            def d1(r, _v=value, _dom=domain):  # noqa: E731 - closure over value
                return fd_derivative(_v, r, order=1, domain=_dom)
        if d2 is None:
            if had_d1:
                def d2(r, _d1=d1, _dom=domain):
                    return fd_derivative(_d1, r, order=1, domain=_dom)
            else:
                def d2(r, _v=value, _dom=domain):
                    return fd_derivative(_v, r, order=2, domain=_dom)
        return cls(
            value=value,
            d1=d1,
            d2=d2,
            provenance="analytic" if analytic else "finite-difference",
            domain=domain,
        )

    @classmethod
    def constant(cls, c: float, domain=(-math.inf, math.inf)) -> "RadialFunction":
        c = float(c)
        return cls(
            value=lambda r: np.full_like(np.asarray(r, dtype=float), c) if np.ndim(r) else c,
            d1=lambda r: np.zeros_like(np.asarray(r, dtype=float)) if np.ndim(r) else 0.0,
            d2=lambda r: np.zeros_like(np.asarray(r, dtype=float)) if np.ndim(r) else 0.0,
            provenance="analytic",
            domain=domain,
        )

    # -- evaluation ----------------------------------------------------------

    def check_domain(self, r) -> None:
        lo, hi = self.domain
        r_arr = np.asarray(r, dtype=float)
        if np.any(r_arr < lo) or np.any(r_arr > hi):
            raise DomainError(f"r={r} outside domain ({lo}, {hi})")

    def __call__(self, r):
        return self.value(r)

    def restricted(self, lo: float, hi: float) -> "RadialFunction":
        """Same function on a narrower domain."""
        new_lo, new_hi = max(lo, self.domain[0]), min(hi, self.domain[1])
        return dataclasses.replace(self, domain=(new_lo, new_hi))


# ----------------------------------------------------------------------------
# scalar fields on R^n
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class ScalarField:
    """Scalar function on R^n exposing value, gradient, and Hessian.

    ``value(x) -> float``, ``gradient(x) -> (n,)``, ``hessian(x) -> (n, n)``
    for ``x`` an ``(n,)`` array.  Fields built by the ``from_radial_*``
    constructors are exact compositions (chain rule), not finite differences.
    """

    value: Callable
    gradient: Callable
    hessian: Callable
    n: int

    @classmethod
    def from_radial_euclidean(cls, rf: RadialFunction, n: int) -> "ScalarField":
        """Lift ``F(x) = rf(|x|)`` to a field on R^n.

        At the origin the gradient is 0 and the Hessian is ``rf''(0) * I``
        (valid for even radial profiles, which is the only case the package
        constructs); elsewhere the exact chain rule is used.
        """

        def value(x):
            return float(rf.value(float(np.linalg.norm(x))))

        def gradient(x):
            x = np.asarray(x, dtype=float)
            s = float(np.linalg.norm(x))
            if s == 0.0:
                return np.zeros(n)
            return float(rf.d1(s)) * x / s

        def hessian(x):
            x = np.asarray(x, dtype=float)
            s = float(np.linalg.norm(x))
            if s == 0.0:
                return float(rf.d2(0.0)) * np.eye(n)
            d1 = float(rf.d1(s))
            d2 = float(rf.d2(s))
            outer = np.outer(x, x) / (s * s)
            return (d2 - d1 / s) * outer + (d1 / s) * np.eye(n)

        return cls(value=value, gradient=gradient, hessian=hessian, n=n)

    @classmethod
    def compose(cls, rf: RadialFunction, inner: "ScalarField") -> "ScalarField":
        """Exact chain-rule lift of ``F(x) = rf(inner(x))``."""

        def value(x):
            return float(rf.value(inner.value(x)))

        def gradient(x):
            u = inner.value(x)
            return float(rf.d1(u)) * inner.gradient(x)

        def hessian(x):
            u = inner.value(x)
            g = inner.gradient(x)
            return float(rf.d2(u)) * np.outer(g, g) + float(rf.d1(u)) * inner.hessian(x)

        return cls(value=value, gradient=gradient, hessian=hessian, n=inner.n)

    @classmethod
    def constant(cls, c: float, n: int) -> "ScalarField":
        c = float(c)
        return cls(
            value=lambda x: c,
            gradient=lambda x: np.zeros(n),
            hessian=lambda x: np.zeros((n, n)),
            n=n,
        )


# ----------------------------------------------------------------------------
# grids
# ----------------------------------------------------------------------------

def chebyshev_grid(lo: float, hi: float, n: int = DEFAULT_GRID_N, margin: float = 0.0):
    """Chebyshev–Lobatto points on [lo + margin, hi - margin], increasing.

    Lobatto points cluster near the interval ends, which is where the residual
    checks need resolution (centers, surfaces, horizons).
    """
    if not lo < hi:
        raise DomainError(f"empty grid interval ({lo}, {hi})")
    a, b = lo + margin, hi - margin
    if not a < b:
        raise DomainError(f"margin {margin} exhausts interval ({lo}, {hi})")
    if n < 2:
        raise ValueError("grid needs at least 2 points")
    j = np.arange(n)
    grid = 0.5 * (a + b) - 0.5 * (b - a) * np.cos(np.pi * j / (n - 1))
    # the affine map can land an ulp off the interval ends; pin them so that
    # callers may rely on grid[0] == a and grid[-1] == b
    grid[0], grid[-1] = a, b
    return grid


# ----------------------------------------------------------------------------
# roots
# ----------------------------------------------------------------------------

def find_brackets(func: Callable, grid) -> list[tuple[float, float]]:
    """Sign-change brackets of ``func`` along ``grid`` (assumed increasing)."""
    grid = np.asarray(grid, dtype=float)
    vals = np.asarray([float(func(g)) for g in grid])
    if not np.all(np.isfinite(vals)):
        raise DomainError("non-finite values while bracketing")
    out = []
    for i in range(len(grid) - 1):
        a, b = vals[i], vals[i + 1]
        if a == 0.0:
            out.append((grid[i], grid[i]))
        elif a * b < 0.0:
            out.append((float(grid[i]), float(grid[i + 1])))
    if vals[-1] == 0.0:
        out.append((grid[-1], grid[-1]))
    return out


def refine_root(func: Callable, a: float, b: float, xtol: float = 1e-12) -> float:
    """Brent's method on a bracket; degenerate brackets return the endpoint."""
    if a == b:
        return float(a)
    return float(brentq(func, a, b, xtol=xtol, rtol=4.0 * np.finfo(float).eps))


def bisect_root(
    func: Callable,
    a: float,
    b: float,
    ytol: float,
    max_iter: int = 200,
) -> float:
    """Plain bisection until ``|func| < ytol`` (and the bracket is tight).

    Used where the contract is phrased in terms of the residual value rather
    than the abscissa (surface detection).
    """
    fa, fb = float(func(a)), float(func(b))
    if fa == 0.0:
        return float(a)
    if fb == 0.0:
        return float(b)
    if fa * fb > 0.0:
        raise DomainError("bisection bracket does not straddle a sign change")
    lo, hi = float(a), float(b)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm = float(func(mid))
        if abs(fm) < ytol and (hi - lo) < max(1e-13, 1e-13 * abs(mid)) * 1e3:
            return mid
        if fm == 0.0:
            return mid
        if fa * fm < 0.0:
            hi, fb = mid, fm
        else:
            lo, fa = mid, fm
    return 0.5 * (lo + hi)


# ----------------------------------------------------------------------------
# spherical quadrature
# ----------------------------------------------------------------------------

def sphere_rule(degree: int = 35) -> tuple[np.ndarray, np.ndarray]:
    """Quadrature rule on the unit sphere S^2, exact through ``degree``.

    Product rule: Gauss–Legendre in cos(theta) with ceil((degree+1)/2) nodes
    crossed with ``degree + 1`` equally spaced azimuths.  Equal-angle azimuths
    integrate e^{i m phi} exactly for |m| <= degree, and GL handles the
    polar polynomial degree, so the product is exact for all spherical
    harmonics through ``degree``.  Weights sum to 4*pi at machine precision.

    Returns
    -------
    points : (N, 3) unit vectors
    weights : (N,) positive weights
    """
    if degree < 1:
        raise ValueError("degree must be positive")
    n_theta = (degree + 2) // 2
    n_phi = degree + 1
    mu, w_mu = np.polynomial.legendre.leggauss(n_theta)  # mu = cos(theta)
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    w_phi = 2.0 * np.pi / n_phi
    sin_theta = np.sqrt(1.0 - mu**2)
    pts = np.empty((n_theta * n_phi, 3))
    wts = np.empty(n_theta * n_phi)
    k = 0
    for i in range(n_theta):
        ct, st, wi = mu[i], sin_theta[i], w_mu[i]
        for j in range(n_phi):
            pts[k, 0] = st * np.cos(phi[j])
            pts[k, 1] = st * np.sin(phi[j])
            pts[k, 2] = ct
            wts[k] = wi * w_phi
            k += 1
    return pts, wts


# ----------------------------------------------------------------------------
# misc
# ----------------------------------------------------------------------------

def max_rms(values) -> tuple[float, float]:
    """(max |v|, rms |v|) of an array; both zero for empty input."""
    v = np.abs(np.asarray(values, dtype=float)).ravel()
    if v.size == 0:
        return 0.0, 0.0
    return float(np.max(v)), float(np.sqrt(np.mean(v * v)))
