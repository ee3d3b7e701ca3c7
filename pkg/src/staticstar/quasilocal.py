"""Quasi-local mass and topology diagnostics on lapse level sets (n = 3).

For a level set {f = c} of the lapse with area A and outward mean curvature H:

    Hawking mass     m_H  = sqrt(A / 16 pi) (1 - W / 16 pi),  W = int H^2 dA
    Brown-York mass  m_BY = (1/8 pi) int (H_0 - H) dA,        H_0 = 2 / b

with b the areal radius (A = 4 pi b^2).  The topology identity

    2 pi chi = [ h (h/4 - kappa/c) - rho_0 ] A

uses the *signed* level-set mean curvature h = -sign(f') H_out and the surface
gravity kappa = |grad f|; rho_0 is the geometric pressure on the surface.
Balancing it against the Hawking inequality gives a slack that vanishes
exactly on umbilical level sets of the catalog solutions.

Everything here is specific to three spatial dimensions.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import catalog as _catalog
from . import conformal as _conformal
from . import tov as _tov
from .errors import (
    BadParams,
    DomainError,
    NoLevelSet,
    NotARegularValue,
)
from .geometry import (
    EIGHT_PI,
    ConformalFlat,
    SchwarzschildForm,
    WarpedProduct,
    conformal_hessian,
    mean_curvature_sphere,
)
from .numerics import ScalarField, find_brackets, refine_root, sphere_rule

__all__ = [
    "SphereClass",
    "QuasiLocalReport",
    "hawking_mass",
    "willmore_energy",
    "brown_york_sphere",
    "topology_identity_residual",
    "sphere_classification",
    "hawking_inequality_slack",
    "shape_operator",
    "level_set_data",
    "mass_sweep",
    "write_sweep_csv",
]

SWEEP_COLUMNS = (
    "c", "r", "area", "H", "kappa", "rho0",
    "m_hawking", "m_brown_york", "chi_residual", "ineq_slack",
)


class SphereClass(enum.Enum):
    """Topology verdict for a level set from the threshold window test."""

    SPHERE_FORCED = "SphereForced"
    TORUS_WINDOW = "TorusWindow"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class QuasiLocalReport:
    """Everything measured on one connected level-set sphere {f = level}.

    ``r`` is the coordinate location (radius, warped coordinate, or invariant
    value, depending on the model chart).  ``mean_curvature`` is the outward
    H; ``h_level`` the signed level-set convention -sign(f') H.  The
    umbilicity fields are populated only when the surface was sampled
    pointwise (conformal models); radial charts are umbilical by symmetry.
    """

    level: float
    r: float
    area: float
    mean_curvature: float
    h_level: float
    h0: float
    willmore: float
    kappa: float
    rho0: float
    m_hawking: float
    m_brown_york: float
    chi_identity_residual: float
    inequality_slack: float
    classification: SphereClass
    thresholds: tuple[float, float] | None
    umbilical_spread: float | None = None
    grad_constancy: float | None = None

    def to_json_dict(self) -> dict:
        out = {
            "level": self.level,
            "r": self.r,
            "area": self.area,
            "H": self.mean_curvature,
            "h_level": self.h_level,
            "H0": self.h0,
            "willmore": self.willmore,
            "kappa": self.kappa,
            "rho0": self.rho0,
            "m_hawking": self.m_hawking,
            "m_brown_york": self.m_brown_york,
            "chi_identity_residual": self.chi_identity_residual,
            "inequality_slack": self.inequality_slack,
            "classification": self.classification.value,
            "thresholds": None if self.thresholds is None else list(self.thresholds),
        }
        if self.umbilical_spread is not None:
            out["umbilical_spread"] = self.umbilical_spread
        if self.grad_constancy is not None:
            out["grad_constancy"] = self.grad_constancy
        return out


# ----------------------------------------------------------------------------
# the individual functionals
# ----------------------------------------------------------------------------

def hawking_mass(area: float, willmore: float) -> float:
    """sqrt(area/16pi) (1 - willmore/16pi)."""
    if area <= 0.0:
        raise DomainError(f"need positive area, got {area}")
    return math.sqrt(area / (16.0 * math.pi)) * (1.0 - willmore / (16.0 * math.pi))


def willmore_energy(h_point, areal_radius: float, degree: int = 35) -> float:
    """int H^2 dA over a round sphere of areal radius b, by quadrature.

    ``h_point`` maps a unit vector (shape (3,)) to the mean curvature at the
    corresponding surface point; the area element is b^2 times the unit-sphere
    measure (the product rule used sums to 4 pi).
    """
    if areal_radius <= 0.0:
        raise DomainError(f"need positive areal radius, got {areal_radius}")
    pts, wts = sphere_rule(degree)
    vals = np.array([float(h_point(p)) ** 2 for p in pts])
    return float(areal_radius**2 * (wts @ vals))


def brown_york_sphere(ansatz, r: float) -> float:
    """(1/8 pi) area (H_0 - H) with flat reference H_0 = 2/b."""
    if isinstance(ansatz, SchwarzschildForm):
        b = float(r)
    elif isinstance(ansatz, WarpedProduct):
        b = float(ansatz.phi.value(r))
    elif isinstance(ansatz, ConformalFlat):
        b = float(ansatz.areal_radius(r) / ansatz.phi_radial.value(r))
    else:
        raise BadParams(f"unsupported ansatz {type(ansatz).__name__}")
    if b <= 0.0:
        raise DomainError(f"non-positive areal radius {b} at r={r}")
    H = mean_curvature_sphere(ansatz, r)
    area = 4.0 * math.pi * b * b
    return area * (2.0 / b - H) / EIGHT_PI


def topology_identity_residual(h_level: float, kappa: float, c: float,
                               rho0: float, area: float) -> float:
    """2 pi chi(S^2) - [h (h/4 - kappa/c) - rho_0] area, h in the signed convention."""
    if c == 0.0:
        raise DomainError("the identity divides by the level value c")
    return 4.0 * math.pi - (h_level * (h_level / 4.0 - kappa / c) - rho0) * area


def sphere_classification(h_level: float, kappa: float, c: float,
                          rho0: float) -> tuple[SphereClass, tuple[float, float] | None]:
    """Threshold test: toroidal topology needs h inside [I-, I+].

    I+- = (2/c)(kappa +- sqrt(kappa^2 + c^2 rho_0)).  A negative discriminant
    leaves the window empty of real endpoints; that case is reported as
    Indeterminate rather than forced, with no thresholds.
    """
    if c <= 0.0:
        raise DomainError(f"classification needs a positive level value, got c={c}")
    disc = kappa * kappa + c * c * rho0
    if disc < 0.0:
        return SphereClass.INDETERMINATE, None
    root = math.sqrt(disc)
    lo = (2.0 / c) * (kappa - root)
    hi = (2.0 / c) * (kappa + root)
    if lo <= h_level <= hi:
        return SphereClass.TORUS_WINDOW, (lo, hi)
    return SphereClass.SPHERE_FORCED, (lo, hi)


def hawking_inequality_slack(h_level: float, kappa: float, c: float, rho0: float,
                             area: float, m_hawking: float, chi: float = 2.0) -> float:
    """Slack in the Hawking-mass bound:

        [ (2 - chi) - kappa/(2 pi c) * int h dA - rho_0 area / 2 pi ]
            - 2 sqrt(16 pi / area) m_H

    with int h dA = h_level * area (h constant on these spheres).  Zero, up
    to quadrature error, on umbilical level sets of the exact solutions.
    """
    if c == 0.0:
        raise DomainError("the slack divides by the level value c")
    if area <= 0.0:
        raise DomainError(f"need positive area, got {area}")
    lhs = (2.0 - chi) \
        - kappa / (2.0 * math.pi * c) * h_level * area \
        - rho0 * area / (2.0 * math.pi)
    rhs = 2.0 * math.sqrt(16.0 * math.pi / area) * m_hawking
    return lhs - rhs


def shape_operator(ansatz: ConformalFlat, f, x) -> tuple[np.ndarray, float]:
    """Level-set shape operator at a point of a conformally flat model.

    ``f`` is the lapse, as a radial profile in the ansatz's radial variable or
    already lifted to a ScalarField.  Returns (A, trace) in a 2-frame tangent
    to the level set of f through x, for the unit normal along +grad f.
    A_ab = phi (t_a . Hess_g f . t_b) / |grad f|_euclid with
    euclidean-orthonormal tangents t_a; the trace is the mean curvature with
    respect to that normal (so -h_level in the signed convention, and
    sign(f') H_outward).
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (3,):
        raise BadParams("shape_operator expects a point of R^3")
    f_field = f if isinstance(f, ScalarField) else ansatz.lift(f)
    grad = np.asarray(f_field.gradient(x), dtype=float)
    gnorm = float(np.linalg.norm(grad))
    if gnorm < 1e-300:
        raise NotARegularValue(f"grad f vanishes at {x}")
    nu = grad / gnorm
    k = int(np.argmin(np.abs(nu)))
    e = np.zeros(3)
    e[k] = 1.0
    t1 = e - (e @ nu) * nu
    t1 /= np.linalg.norm(t1)
    t2 = np.cross(nu, t1)
    hess = conformal_hessian(ansatz.phi, f_field, x)
    p = float(ansatz.phi.value(x))
    a11 = p * float(t1 @ hess @ t1) / gnorm
    a22 = p * float(t2 @ hess @ t2) / gnorm
    a12 = p * float(t1 @ hess @ t2) / gnorm
    A = np.array([[a11, a12], [a12, a22]])
    return A, a11 + a22


# ----------------------------------------------------------------------------
# level-set extraction
# ----------------------------------------------------------------------------

def _root_scan(f_value, f_slope, c: float, lo: float, hi: float, grid_n: int):
    """All simple roots of f - c on [lo, hi]; raises on critical levels."""
    grid = np.linspace(lo, hi, grid_n)

    def g(r):
        return float(f_value(r)) - c

    roots = []
    for a, b in find_brackets(g, grid):
        r0 = refine_root(g, a, b)
        if abs(float(f_slope(r0))) < 1e-12 * max(1.0, abs(c)):
            raise NotARegularValue(
                f"c={c} is a critical value of the lapse (f'({r0}) ~ 0)"
            )
        roots.append(float(r0))
    return roots


def _dedupe(roots):
    out = []
    for r in sorted(roots):
        if not out or abs(r - out[-1]) > 1e-9 * max(1.0, abs(r)):
            out.append(r)
    return out


def _assemble_report(c, r0, area, H_out, slope_sign, kappa, rho0, willmore, b,
                     spread=None, gradc=None) -> QuasiLocalReport:
    h_level = -slope_sign * H_out
    m_h = hawking_mass(area, willmore)
    m_by = area * (2.0 / b - H_out) / EIGHT_PI
    chi_res = topology_identity_residual(h_level, kappa, c, rho0, area)
    cls, thresholds = sphere_classification(h_level, kappa, c, rho0)
    slack = hawking_inequality_slack(h_level, kappa, c, rho0, area, m_h)
    return QuasiLocalReport(
        level=float(c),
        r=float(r0),
        area=float(area),
        mean_curvature=float(H_out),
        h_level=float(h_level),
        h0=float(2.0 / b),
        willmore=float(willmore),
        kappa=float(kappa),
        rho0=float(rho0),
        m_hawking=float(m_h),
        m_brown_york=float(m_by),
        chi_identity_residual=float(chi_res),
        inequality_slack=float(slack),
        classification=cls,
        thresholds=thresholds,
        umbilical_spread=spread,
        grad_constancy=gradc,
    )


def _radial_level_report(ansatz, f_rf, rho0: float, c: float, r0: float,
                         degree: int) -> QuasiLocalReport:
    """Report for a rotationally symmetric chart (Schwarzschild or warped)."""
    if isinstance(ansatz, SchwarzschildForm):
        b = float(r0)
        x = math.exp(-float(ansatz.gamma.value(r0)))
        kappa = math.sqrt(max(x, 0.0)) * abs(float(f_rf.d1(r0)))
    elif isinstance(ansatz, WarpedProduct):
        b = float(ansatz.phi.value(r0))
        kappa = abs(float(f_rf.d1(r0)))
    else:
        raise BadParams(f"unsupported radial ansatz {type(ansatz).__name__}")
    H_out = float(mean_curvature_sphere(ansatz, r0))
    area = 4.0 * math.pi * b * b
    willmore = willmore_energy(lambda p: H_out, b, degree=degree)
    sgn = math.copysign(1.0, float(f_rf.d1(r0)))
    return _assemble_report(c, r0, area, H_out, sgn, kappa, rho0, willmore, b)


def _catalog_levels(model, c, window, grid_n, degree):
    found = []
    for piece in model.pieces:
        lo, hi = window if window is not None else piece.scan_window()
        p_lo, p_hi = piece.scan_window()
        lo, hi = max(lo, p_lo), min(hi, p_hi)
        if not lo < hi:
            continue
        rf = piece.fluid.f
        for r0 in _root_scan(rf.value, rf.d1, c, lo, hi, grid_n):
            found.append((r0, piece))
    reports = []
    for r0 in _dedupe([r for r, _ in found]):
        piece = next(p for r, p in found
                     if abs(r - r0) <= 1e-9 * max(1.0, abs(r0)))
        rho0 = float(piece.fluid.rho.value(r0))
        reports.append(
            _radial_level_report(piece.ansatz, piece.fluid.f, rho0, c, r0, degree)
        )
    if not reports:
        raise NoLevelSet(f"the lapse never reaches c={c} in the scanned windows")
    return sorted(reports, key=lambda rep: rep.r)


def _tov_levels(model, c, window, grid_n, degree):
    prof = model.profile
    f_rf = model.lapse_function()
    if window is not None:
        lo, hi = float(window[0]), float(window[1])
    else:
        lo = prof.r_start
        hi = 3.0 * model.r_b
        if 0.0 < c < 1.0:
            # vacuum level sets sit at 2M/(1-c^2); make sure the scan covers it
            hi = max(hi, 1.2 * 2.0 * model.mass / (1.0 - c * c))
    roots = _dedupe(_root_scan(f_rf.value, f_rf.d1, c, lo, hi, grid_n))
    if not roots:
        raise NoLevelSet(f"the lapse never reaches c={c} on [{lo}, {hi}]")
    ansatz = SchwarzschildForm(
        gamma=model.gamma_function(), v=model.v_function(),
        domain=(lo, hi),
    )
    reports = []
    for r0 in roots:
        rho0 = EIGHT_PI * float(model.rho(r0))
        reports.append(_radial_level_report(ansatz, f_rf, rho0, c, r0, degree))
    return reports


def _conformal_levels(model, c, window, grid_n, degree):
    if model.n != 3:
        raise DomainError(f"quasi-local masses are defined here for n=3, not n={model.n}")
    inv = model.invariant
    if inv.tau <= 0.0:
        raise DomainError("level-set spheres need tau > 0 in the invariant")
    if window is not None:
        lo, hi = float(window[0]), float(window[1])
    else:
        lo, hi = model.domain
        pad = max(1e-9, 1e-9 * (hi - lo))
        lo, hi = lo + pad, hi - pad
    roots = _dedupe(_root_scan(model.f.value, model.f.d1, c, lo, hi, grid_n))
    if not roots:
        raise NoLevelSet(f"the lapse never reaches c={c} on [{lo}, {hi}]")

    ansatz = model.to_ansatz()
    f_field = ansatz.lift(model.f)
    phi_field = ansatz.phi
    center = inv.center
    pts_unit, wts = sphere_rule(degree)
    reports = []
    for u0 in roots:
        s = inv.sphere_radius(u0)
        p0 = float(model.phi.value(u0))
        b = s / p0
        area = 4.0 * math.pi * b * b
        kappa = p0 * abs(float(model.f.d1(u0))) * 2.0 * inv.tau * s
        H_out = float(mean_curvature_sphere(ansatz, u0))
        sgn = math.copysign(1.0, float(model.f.d1(u0)))

        # pointwise audit over the actual 3D surface: gradient constancy,
        # umbilicity, and the Willmore energy by quadrature
        traces = np.empty(len(pts_unit))
        spread = 0.0
        gnorms = np.empty(len(pts_unit))
        for i, p in enumerate(pts_unit):
            x = center + s * p
            A, tr = shape_operator(ansatz, f_field, x)
            traces[i] = tr
            spread = max(spread, math.hypot(A[0, 0] - A[1, 1], 2.0 * A[0, 1]))
            grad = np.asarray(f_field.gradient(x), dtype=float)
            gnorms[i] = float(phi_field.value(x)) * float(np.linalg.norm(grad))
        gradc = float(np.std(gnorms) / np.mean(gnorms)) if np.mean(gnorms) != 0 else math.inf
        willmore = float(b * b * (wts @ traces**2))
        rho0 = float(model.rho_geo(u0))
        reports.append(
            _assemble_report(c, u0, area, H_out, sgn, kappa, rho0, willmore, b,
                             spread=float(spread), gradc=gradc)
        )
    return reports


def level_set_data(model, c: float, window=None, grid_n: int = 2048,
                   degree: int = 35) -> list[QuasiLocalReport]:
    """All level-set spheres {f = c} of a model, innermost first.

    Accepts an analytic catalog model, an integrated stellar model, or a
    conformally flat model; raises NoLevelSet when the lapse never attains c
    in the scanned window and NotARegularValue at critical levels.
    """
    c = float(c)
    if isinstance(model, _catalog.AnalyticModel):
        return _catalog_levels(model, c, window, grid_n, degree)
    if isinstance(model, _tov.StellarModel):
        return _tov_levels(model, c, window, grid_n, degree)
    if isinstance(model, _conformal.ConformalModel):
        return _conformal_levels(model, c, window, grid_n, degree)
    raise BadParams(f"no level-set support for {type(model).__name__}")


def mass_sweep(model, levels, grid_n: int = 2048,
               degree: int = 35) -> list[QuasiLocalReport]:
    """level_set_data over many levels; levels with no level set are skipped."""
    out = []
    for c in levels:
        try:
            out.extend(level_set_data(model, float(c), grid_n=grid_n, degree=degree))
        except NoLevelSet:
            continue
    return out


def write_sweep_csv(reports, path) -> None:
    """Write sweep rows (one per level-set sphere) as CSV, repr precision."""
    lines = [",".join(SWEEP_COLUMNS)]
    for rep in reports:
        row = (rep.level, rep.r, rep.area, rep.mean_curvature, rep.kappa,
               rep.rho0, rep.m_hawking, rep.m_brown_york,
               rep.chi_identity_residual, rep.inequality_slack)
        lines.append(",".join(repr(float(v)) for v in row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
