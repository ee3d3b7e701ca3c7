"""Curvature and field-equation residuals for static perfect-fluid geometries.

The object under study is a Riemannian n-manifold (M, g) carrying a positive
lapse f and fluid data (mu, rho) satisfying

    f Ric = Hess f + ((mu - rho)/(n-1)) f g            (field equation)
    Lap f = ((n-2) mu + n rho)/(n-1) f                 (trace part)
    mu    = R / 2                                      (scalar constraint)

with mu, rho in the *geometric* convention.  Observational papers and the TOV
literature use *physical* variables instead; the two are related by

    mu_geo = 8 pi mu_phys + Lambda,     rho_geo = 8 pi rho_phys - Lambda,

which follows from eliminating the Lorentzian Ricci tensor between the two
formulations (the geometric pair is Lambda-free because Lambda enters the
Einstein equation and the stress tensor with opposite signs).  Use
:func:`to_geometric` / :func:`to_physical` rather than inlining 8*pi factors.

Everything here is evaluated on the spatial factor only; no Lorentzian metric
is ever constructed.

Supported metric ansatz classes
-------------------------------
* :class:`SchwarzschildForm` — g = e^{gamma(r)} dr^2 + r^2 g_{S^2}
* :class:`WarpedProduct`     — g = dr^2 + phi(r)^2 g_{S^2}   (r = proper distance)
* :class:`ConformalFlat`     — g = phi(x)^{-2} delta  on a subset of R^n
"""

from __future__ import annotations

import json
import math
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from .errors import BadParams, DomainError
from .numerics import EPS_DOM, RadialFunction, ScalarField, max_rms

__all__ = [
    "SchwarzschildForm",
    "WarpedProduct",
    "ConformalFlat",
    "FluidData",
    "ResidualEntry",
    "ResidualReport",
    "to_geometric",
    "to_physical",
    "scale_shift",
    "ricci_warped",
    "conformal_curvature",
    "conformal_hessian",
    "sectional_conformal",
    "spf_residuals",
    "tolman_residuals",
    "conservation_residual",
    "mean_curvature_sphere",
]

EIGHT_PI = 8.0 * math.pi


# ----------------------------------------------------------------------------
# convention bridge
# ----------------------------------------------------------------------------

def to_geometric(mu_phys: float, rho_phys: float, lam: float = 0.0) -> tuple[float, float]:
    """(mu, rho) physical -> geometric: (8 pi mu + Lambda, 8 pi rho - Lambda)."""
    return EIGHT_PI * mu_phys + lam, EIGHT_PI * rho_phys - lam


def to_physical(mu_geo: float, rho_geo: float, lam: float = 0.0) -> tuple[float, float]:
    """(mu, rho) geometric -> physical; inverse of :func:`to_geometric`."""
    return (mu_geo - lam) / EIGHT_PI, (rho_geo + lam) / EIGHT_PI


def scale_shift(rf: RadialFunction, a: float, b: float) -> RadialFunction:
    """The radial function a * rf + b (derivatives scale by a)."""
    a, b = float(a), float(b)
    return RadialFunction(
        value=lambda r: a * np.asarray(rf.value(r), dtype=float) + b,
        d1=lambda r: a * np.asarray(rf.d1(r), dtype=float),
        d2=lambda r: a * np.asarray(rf.d2(r), dtype=float),
        provenance=rf.provenance,
        domain=rf.domain,
    )


# ----------------------------------------------------------------------------
# metric ansatz classes
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class SchwarzschildForm:
    """g = e^{gamma(r)} dr^2 + r^2 g_{S^2}, optionally with the lapse potential v.

    ``v`` is the logarithm of the squared lapse (f = e^{v/2}); it is required
    by the Tolman-style residuals but not by purely spatial curvature.
    """

    gamma: RadialFunction
    v: RadialFunction | None = None
    domain: tuple[float, float] | None = None

    @property
    def n(self) -> int:
        return 3

    def interval(self) -> tuple[float, float]:
        if self.domain is not None:
            return self.domain
        lo, hi = self.gamma.domain
        if self.v is not None:
            lo, hi = max(lo, self.v.domain[0]), min(hi, self.v.domain[1])
        return max(lo, EPS_DOM), hi

    def lapse(self) -> RadialFunction:
        """f = e^{v/2} with analytic derivatives, when v is present."""
        if self.v is None:
            raise BadParams("SchwarzschildForm has no lapse potential v")
        v = self.v

        def f_val(r):
            return np.exp(0.5 * np.asarray(v.value(r), dtype=float))

        def f_d1(r):
            return 0.5 * np.asarray(v.d1(r), dtype=float) * f_val(r)

        def f_d2(r):
            vv1 = np.asarray(v.d1(r), dtype=float)
            vv2 = np.asarray(v.d2(r), dtype=float)
            return (0.5 * vv2 + 0.25 * vv1 * vv1) * f_val(r)

        return RadialFunction(f_val, f_d1, f_d2, provenance=v.provenance, domain=v.domain)


@dataclass(frozen=True)
class WarpedProduct:
    """g = dr^2 + phi(r)^2 g_{S^2}; r is proper radial distance."""

    phi: RadialFunction
    domain: tuple[float, float] | None = None

    @property
    def n(self) -> int:
        return 3

    def interval(self) -> tuple[float, float]:
        if self.domain is not None:
            return self.domain
        lo, hi = self.phi.domain
        return max(lo, EPS_DOM), hi


@dataclass(frozen=True)
class ConformalFlat:
    """g = phi(x)^{-2} delta_ij on (a subset of) R^n, n >= 3.

    The ansatz is radial in a generalized sense: a scalar ``radial`` field
    u(x) (Euclidean radius, or a quadric invariant) parameterizes the model,
    radial profiles are functions of u, and ``point_of`` embeds a grid value
    u into R^n on a reference ray.  ``phi`` is the full field; ``phi_radial``
    its profile in u.

    For invariant-parameterized models ``quadric = (tau, C)`` records the
    quadric data needed for sphere geometry: the level sets of u are round
    spheres of Euclidean radius sqrt(4 tau u + C) / (2 tau) (tau > 0).
    """

    phi: ScalarField
    phi_radial: RadialFunction
    n: int
    radial: ScalarField
    point_of: Callable[[float], np.ndarray]
    kind: str = "euclidean"  # "euclidean" | "invariant"
    quadric: tuple[float, float] | None = None  # (tau, C) for kind="invariant"
    domain: tuple[float, float] = (EPS_DOM, math.inf)

    def __post_init__(self):
        if self.n < 3:
            raise BadParams(f"conformally flat ansatz needs n >= 3, got n={self.n}")
        if self.kind not in ("euclidean", "invariant"):
            raise BadParams(f"unknown radial kind {self.kind!r}")
        if self.kind == "invariant" and self.quadric is None:
            raise BadParams("invariant-parameterized ansatz requires quadric=(tau, C)")

    def interval(self) -> tuple[float, float]:
        return self.domain

    @classmethod
    def euclidean(cls, phi_radial: RadialFunction, n: int,
                  domain: tuple[float, float] | None = None) -> "ConformalFlat":
        """Radially symmetric factor phi(|x|); grid values are Euclidean radii."""
        if domain is None:
            lo, hi = phi_radial.domain
            domain = (max(lo, EPS_DOM), hi)

        def radius_value(x):
            return float(np.linalg.norm(x))

        def radius_gradient(x):
            x = np.asarray(x, dtype=float)
            s = float(np.linalg.norm(x))
            if s == 0.0:
                raise DomainError("Euclidean radius field is singular at the origin")
            return x / s

        def radius_hessian(x):
            x = np.asarray(x, dtype=float)
            s = float(np.linalg.norm(x))
            if s == 0.0:
                raise DomainError("Euclidean radius field is singular at the origin")
            return (np.eye(len(x)) - np.outer(x, x) / (s * s)) / s

        radial = ScalarField(radius_value, radius_gradient, radius_hessian, n)
        e1 = np.zeros(n)
        e1[0] = 1.0
        return cls(
            phi=ScalarField.from_radial_euclidean(phi_radial, n),
            phi_radial=phi_radial,
            n=n,
            radial=radial,
            point_of=lambda s, _e=e1: float(s) * _e,
            kind="euclidean",
            domain=domain,
        )

    def lift(self, rf: RadialFunction) -> ScalarField:
        """Interpret a radial profile as a field on R^n: F(x) = rf(u(x))."""
        if self.kind == "euclidean":
            return ScalarField.from_radial_euclidean(rf, self.n)
        return ScalarField.compose(rf, self.radial)

    def areal_radius(self, u: float) -> float:
        """Euclidean radius of the level sphere {radial = u} about its center."""
        if self.kind == "euclidean":
            return float(u)
        tau, c_inv = self.quadric
        if tau <= 0.0:
            raise DomainError("level sets of a tau <= 0 invariant are not spheres")
        disc = 4.0 * tau * u + c_inv
        if disc <= 0.0:
            raise DomainError(f"invariant value u={u} has empty level sphere")
        return math.sqrt(disc) / (2.0 * tau)


MetricAnsatz = SchwarzschildForm | WarpedProduct | ConformalFlat


# ----------------------------------------------------------------------------
# fluid data
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class FluidData:
    """Lapse and fluid profiles in the geometric convention.

    ``mu`` and ``rho`` are geometric (mu = R/2 on solutions); construct from
    physical profiles with :meth:`from_physical`.  ``lam`` records the
    cosmological constant used in the bridge, for reporting only — it is
    already absorbed into the geometric values.

    The lapse must be positive on the evaluation domain; residual evaluation
    raises DomainError the moment it sees f <= 0.
    """

    f: RadialFunction
    mu: RadialFunction
    rho: RadialFunction
    lam: float = 0.0

    @classmethod
    def from_physical(
        cls,
        f: RadialFunction,
        mu_phys: RadialFunction,
        rho_phys: RadialFunction,
        lam: float = 0.0,
    ) -> "FluidData":
        return cls(
            f=f,
            mu=scale_shift(mu_phys, EIGHT_PI, lam),
            rho=scale_shift(rho_phys, EIGHT_PI, -lam),
            lam=lam,
        )


# ----------------------------------------------------------------------------
# residual reports
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class ResidualEntry:
    """Aggregated |residual| statistics for one equation over a grid."""

    eq: str
    max: float
    rms: float
    worst_r: float


@dataclass(frozen=True)
class ResidualReport:
    """Residuals of a system of equations over a grid, plus a verdict.

    ``passed`` is ``max over entries <= tol`` for the tolerance the producing
    operation was given.  Serialization key is ``"pass"``.
    """

    entries: tuple[ResidualEntry, ...]
    grid: np.ndarray = field(repr=False)
    passed: bool
    tol: float

    @property
    def worst(self) -> float:
        return max((e.max for e in self.entries), default=0.0)

    def entry(self, eq: str) -> ResidualEntry:
        for e in self.entries:
            if e.eq == eq:
                return e
        raise KeyError(eq)

    def to_json_dict(self) -> dict:
        return {
            "entries": [
                {"eq": e.eq, "max": e.max, "rms": e.rms, "worst_r": e.worst_r}
                for e in self.entries
            ],
            "pass": self.passed,
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_json_dict(), indent=indent)


def _entry(eq: str, values: np.ndarray, grid: np.ndarray) -> ResidualEntry:
    values = np.abs(np.asarray(values, dtype=float))
    if values.ndim > 1:  # componentwise residual: collapse components first
        values = values.reshape(values.shape[0], -1).max(axis=1)
    mx, rms = max_rms(values)
    worst = float(grid[int(np.argmax(values))]) if values.size else float("nan")
    return ResidualEntry(eq=eq, max=mx, rms=rms, worst_r=worst)


def _report(entries: list[ResidualEntry], grid: np.ndarray, tol: float) -> ResidualReport:
    worst = max((e.max for e in entries), default=0.0)
    return ResidualReport(entries=tuple(entries), grid=np.asarray(grid, dtype=float),
                          passed=bool(worst <= tol), tol=tol)


# ----------------------------------------------------------------------------
# curvature: warped products
# ----------------------------------------------------------------------------

def ricci_warped(phi: RadialFunction, r):
    """Ricci data of g = dr^2 + phi(r)^2 g_{S^2} at radius r.

    Returns
    -------
    (R11, Rab_coeff, R_scalar):
        R11 is the radial-radial Ricci component in the orthonormal frame,
        ``-2 phi''/phi``; the tangential Ricci block is ``Rab_coeff * g_{S^2}``
        in coordinates, with ``Rab_coeff = 1 - phi'^2 - phi phi''``; and
        ``R_scalar = R11 + 2 Rab_coeff / phi^2``.
    """
    p = np.asarray(phi.value(r), dtype=float)
    p1 = np.asarray(phi.d1(r), dtype=float)
    p2 = np.asarray(phi.d2(r), dtype=float)
    if np.any(p == 0.0):
        raise DomainError("warped factor phi vanishes on the evaluation set")
    r11 = -2.0 * p2 / p
    rab = 1.0 - p1 * p1 - p * p2
    r_scalar = r11 + 2.0 * rab / (p * p)
    return r11, rab, r_scalar


# ----------------------------------------------------------------------------
# curvature: conformally flat metrics
# ----------------------------------------------------------------------------

def conformal_curvature(phi: ScalarField, x) -> tuple[np.ndarray, float]:
    """Ricci tensor (coordinate components) and scalar curvature of phi^{-2} delta.

        Ric_ij = phi^{-2} { (n-2) phi phi_{,ij}
                            + [phi Lap phi - (n-1) |dphi|^2] delta_ij }
        R      = (n-1) [ 2 phi Lap phi - n |dphi|^2 ]

    with all derivatives Euclidean.  The returned Ricci is the full (n, n)
    coordinate matrix; its g-trace reproduces R (a cheap internal consistency
    check the tests pin to 1e-12).
    """
    x = np.asarray(x, dtype=float)
    n = phi.n
    p = phi.value(x)
    if p <= 0.0:
        raise DomainError("conformal factor must be positive")
    grad = np.asarray(phi.gradient(x), dtype=float)
    hess = np.asarray(phi.hessian(x), dtype=float)
    lap = float(np.trace(hess))
    grad2 = float(grad @ grad)
    ric = ((n - 2) * p * hess + (p * lap - (n - 1) * grad2) * np.eye(n)) / (p * p)
    r_scalar = (n - 1) * (2.0 * p * lap - n * grad2)
    return ric, r_scalar


def conformal_hessian(phi: ScalarField, f: ScalarField, x) -> np.ndarray:
    """Hessian of f with respect to g = phi^{-2} delta (coordinate components).

        (Hess_g f)_ij = f_{,ij} + (phi_i f_j + phi_j f_i)/phi
                        - delta_ij <dphi, df> / phi
    """
    x = np.asarray(x, dtype=float)
    p = phi.value(x)
    if p <= 0.0:
        raise DomainError("conformal factor must be positive")
    gp = np.asarray(phi.gradient(x), dtype=float)
    gf = np.asarray(f.gradient(x), dtype=float)
    hf = np.asarray(f.hessian(x), dtype=float)
    n = phi.n
    return hf + (np.outer(gp, gf) + np.outer(gf, gp)) / p \
        - (float(gp @ gf) / p) * np.eye(n)


def sectional_conformal(phi: ScalarField, x, i: int, j: int) -> float:
    """Sectional curvature of the coordinate 2-plane span(e_i, e_j).

    For g = phi^{-2} delta, writing w = log phi,

        K_ij = phi^2 [ w_{,ii} + w_{,jj} - sum_{l != i,j} (w_{,l})^2 ].

    Raises IndexError for i == j or out-of-range indices (a 2-plane needs two
    distinct directions).
    """
    n = phi.n
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"plane indices ({i}, {j}) out of range for n={n}")
    if i == j:
        raise IndexError("sectional curvature needs two distinct directions")
    x = np.asarray(x, dtype=float)
    p = phi.value(x)
    if p <= 0.0:
        raise DomainError("conformal factor must be positive")
    g = np.asarray(phi.gradient(x), dtype=float)
    h = np.asarray(phi.hessian(x), dtype=float)
    # (log phi)_{,kk} = phi_{,kk}/phi - (phi_k/phi)^2 ;  (log phi)_{,l} = phi_l/phi
    logh_ii = h[i, i] / p - (g[i] / p) ** 2
    logh_jj = h[j, j] / p - (g[j] / p) ** 2
    tail = sum((g[ell] / p) ** 2 for ell in range(n) if ell not in (i, j))
    return float(p * p * (logh_ii + logh_jj - tail))


# ----------------------------------------------------------------------------
# radial frame data (shared by the two radial ansatz classes)
# ----------------------------------------------------------------------------

def _radial_frame(ansatz, fluid_f: RadialFunction, r: np.ndarray) -> dict:
    """Orthonormal-frame curvature and lapse Hessian data along a radial grid.

    Returns ric_rr, ric_tan, R, hess_rr, hess_tan, lap, f, plus |grad f|.
    """
    r = np.asarray(r, dtype=float)
    f = np.asarray(fluid_f.value(r), dtype=float)
    f1 = np.asarray(fluid_f.d1(r), dtype=float)
    f2 = np.asarray(fluid_f.d2(r), dtype=float)

    if isinstance(ansatz, SchwarzschildForm):
        g = np.asarray(ansatz.gamma.value(r), dtype=float)
        g1 = np.asarray(ansatz.gamma.d1(r), dtype=float)
        x = np.exp(-g)  # e^{-gamma}
        ric_rr = g1 * x / r
        ric_tan = (1.0 - x + 0.5 * r * g1 * x) / (r * r)
        hess_rr = x * (f2 - 0.5 * g1 * f1)
        hess_tan = x * f1 / r
        grad_f = np.sqrt(x) * np.abs(f1)
    elif isinstance(ansatz, WarpedProduct):
        p = np.asarray(ansatz.phi.value(r), dtype=float)
        p1 = np.asarray(ansatz.phi.d1(r), dtype=float)
        p2 = np.asarray(ansatz.phi.d2(r), dtype=float)
        if np.any(p == 0.0):
            raise DomainError("warped factor vanishes on the grid")
        ric_rr = -2.0 * p2 / p
        ric_tan = (1.0 - p1 * p1 - p * p2) / (p * p)
        hess_rr = f2
        hess_tan = p1 * f1 / p
        grad_f = np.abs(f1)
    else:  # pragma: no cover - guarded by callers
        raise BadParams(f"not a radial ansatz: {type(ansatz).__name__}")

    lap = hess_rr + 2.0 * hess_tan
    scal = ric_rr + 2.0 * ric_tan
    return {
        "f": f, "f1": f1, "f2": f2,
        "ric_rr": ric_rr, "ric_tan": ric_tan, "R": scal,
        "hess_rr": hess_rr, "hess_tan": hess_tan, "lap": lap,
        "grad_f": grad_f,
    }


# ----------------------------------------------------------------------------
# static perfect-fluid residuals
# ----------------------------------------------------------------------------

def spf_residuals(
    ansatz: MetricAnsatz,
    fluid: FluidData,
    grid,
    tol: float = 1e-7,
) -> ResidualReport:
    """Residuals of the static perfect-fluid system on a grid.

    Entries
    -------
    ``field[..]``          componentwise residual of f Ric - Hess f - ((mu-rho)/(n-1)) f g
    ``trace``              Lap f - ((n-2) mu + n rho)/(n-1) f
    ``scalar-curvature``   mu - R/2
    ``traceless``          f (Ric - (R/n) g) - (Hess f - (Lap f / n) g), componentwise

    ``mu``/``rho`` are read from ``fluid`` in the geometric convention.
    The lapse must be positive on the grid.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise DomainError("empty residual grid")

    if isinstance(ansatz, ConformalFlat):
        return _spf_residuals_conformal(ansatz, fluid, grid, tol)

    n = ansatz.n
    d = _radial_frame(ansatz, fluid.f, grid)
    f = d["f"]
    if np.any(f <= 0.0):
        raise DomainError("lapse is not positive on the residual grid")
    mu = np.asarray(fluid.mu.value(grid), dtype=float)
    rho = np.asarray(fluid.rho.value(grid), dtype=float)

    coef = (mu - rho) / (n - 1)
    e_rr = f * d["ric_rr"] - d["hess_rr"] - coef * f
    e_tan = f * d["ric_tan"] - d["hess_tan"] - coef * f
    e_trace = d["lap"] - ((n - 2) * mu + n * rho) / (n - 1) * f
    e_scal = mu - 0.5 * d["R"]
    t_rr = f * (d["ric_rr"] - d["R"] / n) - (d["hess_rr"] - d["lap"] / n)
    t_tan = f * (d["ric_tan"] - d["R"] / n) - (d["hess_tan"] - d["lap"] / n)

    entries = [
        _entry("field[rr]", e_rr, grid),
        _entry("field[tan]", e_tan, grid),
        _entry("trace", e_trace, grid),
        _entry("scalar-curvature", e_scal, grid),
        _entry("traceless", np.stack([t_rr, t_tan], axis=-1), grid),
    ]
    return _report(entries, grid, tol)


def _spf_residuals_conformal(
    ansatz: ConformalFlat, fluid: FluidData, grid: np.ndarray, tol: float
) -> ResidualReport:
    n = ansatz.n
    f_field = ansatz.lift(fluid.f)
    e_field = np.zeros((grid.size, n, n))
    e_trace = np.zeros(grid.size)
    e_scal = np.zeros(grid.size)
    e_tracefree = np.zeros((grid.size, n, n))

    for k, u in enumerate(grid):
        x = ansatz.point_of(float(u))
        p = ansatz.phi.value(x)
        if p <= 0.0:
            raise DomainError(f"conformal factor non-positive at grid value {u}")
        fval = f_field.value(x)
        if fval <= 0.0:
            raise DomainError(f"lapse non-positive at grid value {u}")
        mu = float(fluid.mu.value(u))
        rho = float(fluid.rho.value(u))

        ric, r_scal = conformal_curvature(ansatz.phi, x)
        hess = conformal_hessian(ansatz.phi, f_field, x)
        metric = np.eye(n) / (p * p)
        lap = (p * p) * float(np.trace(hess))

        e_field[k] = fval * ric - hess - ((mu - rho) / (n - 1)) * fval * metric
        e_trace[k] = lap - ((n - 2) * mu + n * rho) / (n - 1) * fval
        e_scal[k] = mu - 0.5 * r_scal
        e_tracefree[k] = fval * (ric - (r_scal / n) * metric) \
            - (hess - (lap / n) * metric)

    entries = [
        _entry("field[ij]", e_field, grid),
        _entry("trace", e_trace, grid),
        _entry("scalar-curvature", e_scal, grid),
        _entry("traceless", e_tracefree, grid),
    ]
    return _report(entries, grid, tol)


# ----------------------------------------------------------------------------
# Tolman-form residuals (Schwarzschild-form coordinates, physical variables)
# ----------------------------------------------------------------------------

def tolman_residuals(
    gamma: RadialFunction,
    v: RadialFunction,
    mu: RadialFunction,
    rho: RadialFunction,
    grid,
    tol: float = 1e-9,
) -> ResidualReport:
    """Residuals of the first-order static-star system in physical variables.

    With x = e^{-gamma}:

        density:       8 pi mu  - (1 - (r x)') / r^2
        pressure:      8 pi rho - [ -1/r^2 + x (v'/r + 1/r^2) ]
        conservation:  2 rho' + v' (rho + mu)

    ``mu``/``rho`` here are *physical* (no 8 pi, no Lambda).
    """
    r = np.asarray(grid, dtype=float)
    if np.any(r <= 0.0):
        raise DomainError("Tolman residuals need r > 0")
    g = np.asarray(gamma.value(r), dtype=float)
    g1 = np.asarray(gamma.d1(r), dtype=float)
    x = np.exp(-g)
    x1 = -g1 * x
    v1 = np.asarray(v.d1(r), dtype=float)
    mu_v = np.asarray(mu.value(r), dtype=float)
    rho_v = np.asarray(rho.value(r), dtype=float)
    rho1 = np.asarray(rho.d1(r), dtype=float)

    t_density = EIGHT_PI * mu_v - (1.0 - (x + r * x1)) / (r * r)
    t_pressure = EIGHT_PI * rho_v - (-1.0 / (r * r) + x * (v1 / r + 1.0 / (r * r)))
    t_conserv = 2.0 * rho1 + v1 * (rho_v + mu_v)

    entries = [
        _entry("density", t_density, r),
        _entry("pressure", t_pressure, r),
        _entry("conservation", t_conserv, r),
    ]
    return _report(entries, r, tol)


def conservation_residual(f: RadialFunction, mu: RadialFunction,
                          rho: RadialFunction, grid) -> np.ndarray:
    """Pointwise f rho' + (mu + rho) f' (vanishes on solutions).

    Works in either convention: under the bridge the expression just rescales
    by 8 pi, so a 1e-6 gate on geometric data is an 8 pi stricter gate on
    physical data.
    """
    r = np.asarray(grid, dtype=float)
    f_v = np.asarray(f.value(r), dtype=float)
    f1 = np.asarray(f.d1(r), dtype=float)
    return f_v * np.asarray(rho.d1(r), dtype=float) \
        + (np.asarray(mu.value(r), dtype=float) + np.asarray(rho.value(r), dtype=float)) * f1


# ----------------------------------------------------------------------------
# mean curvature of coordinate spheres
# ----------------------------------------------------------------------------

def mean_curvature_sphere(ansatz: MetricAnsatz, r: float) -> float:
    """Mean curvature of the coordinate sphere at radial value r, outward normal.

    * SchwarzschildForm: H = (2/r) e^{-gamma/2}
    * WarpedProduct:     H = 2 phi'/phi
    * ConformalFlat:     H = (n-1) (phi - s dphi/ds) / s on the level sphere,
      with s the Euclidean radius about the sphere's center (for invariant
      parameterizations s = sqrt(4 tau u + C)/(2 tau) and the chain rule in
      the invariant is applied).

    "Outward" means the normal of increasing radial parameter.  Sign
    conventions for level-set normals are handled by the quasi-local layer,
    not here.
    """
    if isinstance(ansatz, SchwarzschildForm):
        rr = float(r)
        if rr <= 0.0:
            raise DomainError("coordinate sphere needs r > 0")
        g = float(ansatz.gamma.value(rr))
        return (2.0 / rr) * math.exp(-0.5 * g)
    if isinstance(ansatz, WarpedProduct):
        rr = float(r)
        p = float(ansatz.phi.value(rr))
        if p == 0.0:
            raise DomainError("warped factor vanishes: no sphere here")
        return 2.0 * float(ansatz.phi.d1(rr)) / p
    if isinstance(ansatz, ConformalFlat):
        u = float(r)
        n = ansatz.n
        p = float(ansatz.phi_radial.value(u))
        dp = float(ansatz.phi_radial.d1(u))
        if ansatz.kind == "euclidean":
            s = u
            if s <= 0.0:
                raise DomainError("coordinate sphere needs positive radius")
            dp_ds = dp
        else:
            tau, c_inv = ansatz.quadric
            s = ansatz.areal_radius(u)
            dp_ds = dp * 2.0 * tau * s  # du/ds on the level sphere
        return (n - 1) * (p - s * dp_ds) / s
    raise BadParams(f"unknown ansatz {type(ansatz).__name__}")
