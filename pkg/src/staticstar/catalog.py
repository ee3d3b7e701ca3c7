"""Closed-form static perfect-fluid models with built-in verification.

Each entry packages a metric ansatz, the fluid it supports, and a ``verify``
routine that recomputes field-equation residuals from scratch on a fresh
grid.  All stored density/pressure accessors are *physical*; the geometric
combinations 8*pi*mu + Lambda and 8*pi*rho - Lambda are formed internally
when residuals are evaluated.

Registry: ``MODELS`` maps id -> factory; ``build(model_id, **params)`` and
``parse_model_spec("wyman:R=2,M=0.2")`` construct instances.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from .errors import BadParams, UnknownModel
from .geometry import (
    EIGHT_PI,
    FluidData,
    ResidualEntry,
    ResidualReport,
    SchwarzschildForm,
    WarpedProduct,
    spf_residuals,
    tolman_residuals,
)
from .numerics import RadialFunction, chebyshev_grid

__all__ = [
    "Piece",
    "VerifyResult",
    "AnalyticModel",
    "MODELS",
    "build",
    "parse_model_spec",
    "schwarzschild_exterior",
    "schwarzschild_interior",
    "gamma_zero",
    "einstein_static",
    "wyman",
    "witten_stellar",
]

JUNCTION_TOL = 1e-9


@dataclass(frozen=True)
class Piece:
    """One chart of a model: ansatz + fluid on an interval.

    ``interval`` is the window verification grids are drawn from;
    ``scan_interval`` (defaults to ``interval``) is the usually wider window
    level-set searches may sample.
    """

    label: str
    ansatz: object  # SchwarzschildForm | WarpedProduct | ConformalFlat
    fluid: FluidData  # geometric convention
    mu_phys: RadialFunction
    rho_phys: RadialFunction
    interval: tuple[float, float]
    scan_interval: tuple[float, float] | None = None

    def scan_window(self):
        return self.scan_interval if self.scan_interval is not None else self.interval


@dataclass(frozen=True)
class VerifyResult:
    model_id: str
    reports: dict[str, ResidualReport]
    junction: dict[str, float]
    passed: bool
    notes: tuple[str, ...] = ()

    def to_json_dict(self):
        return {
            "model": self.model_id,
            "passed": self.passed,
            "junction": {k: float(v) for k, v in self.junction.items()},
            "reports": {k: v.to_json_dict() for k, v in self.reports.items()},
            "notes": list(self.notes),
        }


class AnalyticModel:
    """A catalog entry: pieces, parameters, and verification hooks.

    Diagnostic checks (report keys starting with ``diagnostic``) are reported
    but excluded from the aggregate pass flag; they exist to document known
    discrepancies rather than to gate correctness.
    """

    def __init__(
        self,
        model_id: str,
        params: dict,
        pieces: list[Piece],
        native_form: str,
        expected_residual_tol: float,
        lam: float = 0.0,
        unbounded: bool = False,
        junction_points: tuple[float, ...] = (),
        extra_verify: tuple[Callable, ...] = (),
        extras: dict | None = None,
        notes: tuple[str, ...] = (),
    ):
        self.id = model_id
        self.params = dict(params)
        self.pieces = list(pieces)
        self.native_form = native_form
        self.expected_residual_tol = float(expected_residual_tol)
        self.lam = float(lam)
        self.unbounded = bool(unbounded)
        self.junction_points = tuple(junction_points)
        self.extra_verify = tuple(extra_verify)
        self.extras = dict(extras or {})
        self.notes = tuple(notes)

    # -- piecewise accessors (physical units) ----------------------------------

    def piece_at(self, r: float) -> Piece:
        for p in self.pieces:
            lo, hi = p.scan_window()
            if lo <= r <= hi:
                return p
        # fall back on the formal domain of each piece's lapse
        for p in self.pieces:
            lo, hi = p.fluid.f.domain
            if lo < r < hi:
                return p
        raise BadParams(f"r={r} outside every piece of {self.id}")

    def mu(self, r: float) -> float:
        return float(self.piece_at(r).mu_phys(r))

    def rho(self, r: float) -> float:
        return float(self.piece_at(r).rho_phys(r))

    def f(self, r: float) -> float:
        return float(self.piece_at(r).fluid.f(r))

    # -- verification -----------------------------------------------------------

    def verify(self, grid_n: int = 96) -> VerifyResult:
        """Recompute field-equation residuals for every piece on fresh grids."""
        tol = self.expected_residual_tol
        reports: dict[str, ResidualReport] = {}
        for p in self.pieces:
            lo, hi = p.interval
            pad = 1e-6 * (hi - lo)
            grid = chebyshev_grid(lo + pad, hi - pad, grid_n)
            reports[f"field[{p.label}]"] = spf_residuals(p.ansatz, p.fluid, grid, tol=tol)
            if isinstance(p.ansatz, SchwarzschildForm) and p.ansatz.v is not None:
                reports[f"tolman[{p.label}]"] = tolman_residuals(
                    p.ansatz.gamma, p.ansatz.v, p.mu_phys, p.rho_phys, grid, tol=tol
                )
        junction = self._junction_residuals()
        for hook in self.extra_verify:
            name, rep = hook(self, grid_n)
            reports[name] = rep
        passed = all(
            rep.passed for name, rep in reports.items() if not name.startswith("diagnostic")
        ) and all(v <= JUNCTION_TOL for v in junction.values())
        return VerifyResult(
            model_id=self.id,
            reports=reports,
            junction=junction,
            passed=passed,
            notes=self.notes,
        )

    def _junction_residuals(self) -> dict[str, float]:
        out: dict[str, float] = {}
        for r_j in self.junction_points:
            inner, outer = self.pieces[0], self.pieces[1]
            f_i, f_o = inner.fluid.f, outer.fluid.f
            out[f"f@{r_j:.6g}"] = abs(float(f_i(r_j)) - float(f_o(r_j)))
            out[f"df@{r_j:.6g}"] = abs(float(f_i.d1(r_j)) - float(f_o.d1(r_j)))
            gi, go = inner.ansatz.gamma, outer.ansatz.gamma
            out[f"exp_neg_gamma@{r_j:.6g}"] = abs(
                math.exp(-float(gi(r_j))) - math.exp(-float(go(r_j)))
            )
        return out


# ----------------------------------------------------------------------------
# helpers for hand-coded radial functions
# ----------------------------------------------------------------------------

def _rf(value, d1, d2, domain) -> RadialFunction:
    return RadialFunction(
        value=value, d1=d1, d2=d2, provenance="analytic", domain=domain
    )


def _vacuum_gamma_v(M: float, domain) -> tuple[RadialFunction, RadialFunction]:
    """gamma = -log(1 - 2M/r) and v = -gamma, with exact derivatives."""

    def x(r):
        return 1.0 - 2.0 * M / np.asarray(r, dtype=float)

    def xp(r):
        return 2.0 * M / np.asarray(r, dtype=float) ** 2

    def xpp(r):
        return -4.0 * M / np.asarray(r, dtype=float) ** 3

    gamma = _rf(
        lambda r: -np.log(x(r)),
        lambda r: -xp(r) / x(r),
        lambda r: -xpp(r) / x(r) + (xp(r) / x(r)) ** 2,
        domain,
    )
    v = _rf(
        lambda r: np.log(x(r)),
        lambda r: xp(r) / x(r),
        lambda r: xpp(r) / x(r) - (xp(r) / x(r)) ** 2,
        domain,
    )
    return gamma, v


# ----------------------------------------------------------------------------
# the models
# ----------------------------------------------------------------------------

def schwarzschild_exterior(M: float = 1.0) -> AnalyticModel:
    """Vacuum exterior of mass M on (2M, infinity)."""
    if M <= 0:
        raise BadParams(f"need M > 0, got {M}")
    domain = (2.0 * M, math.inf)
    gamma, v = _vacuum_gamma_v(M, domain)
    ansatz = SchwarzschildForm(gamma, v, domain=domain)
    f = ansatz.lapse()
    zero = RadialFunction.constant(0.0, domain)
    fluid = FluidData(f=f, mu=zero, rho=zero)
    piece = Piece(
        label="exterior",
        ansatz=ansatz,
        fluid=fluid,
        mu_phys=zero,
        rho_phys=zero,
        interval=(2.02 * M, 60.0 * M),
        scan_interval=(2.0 * M * (1.0 + 1e-9), 2000.0 * M),
    )
    return AnalyticModel(
        "schwarzschild_exterior",
        {"M": M},
        [piece],
        native_form="schwarzschild",
        expected_residual_tol=1e-9,
    )


def schwarzschild_interior(c: float = 0.0) -> AnalyticModel:
    """Constant negative pressure: mu = c, rho = -c, e^v = e^{-gamma} = 1 - (8 pi c/3) r^2.

    c = 0 degenerates to flat space with vanishing fluid.
    """
    a = EIGHT_PI * c / 3.0
    if c > 0:
        r_h = math.sqrt(1.0 / a)
        domain = (0.0, r_h)
        hi = 0.995 * r_h
    else:
        domain = (0.0, math.inf)
        hi = 10.0

    def x(r):
        return 1.0 - a * np.asarray(r, dtype=float) ** 2

    def xp(r):
        return -2.0 * a * np.asarray(r, dtype=float)

    gamma = _rf(
        lambda r: -np.log(x(r)),
        lambda r: -xp(r) / x(r),
        lambda r: 2.0 * a / x(r) + (xp(r) / x(r)) ** 2,
        domain,
    )
    v = _rf(
        lambda r: np.log(x(r)),
        lambda r: xp(r) / x(r),
        lambda r: -2.0 * a / x(r) - (xp(r) / x(r)) ** 2,
        domain,
    )
    ansatz = SchwarzschildForm(gamma, v, domain=domain)
    f = ansatz.lapse()
    mu_phys = RadialFunction.constant(c, domain)
    rho_phys = RadialFunction.constant(-c, domain)
    fluid = FluidData.from_physical(f, mu_phys, rho_phys, lam=0.0)
    piece = Piece(
        label="interior",
        ansatz=ansatz,
        fluid=fluid,
        mu_phys=mu_phys,
        rho_phys=rho_phys,
        interval=(1e-3 * hi, hi),
    )
    return AnalyticModel(
        "schwarzschild_interior",
        {"c": c},
        [piece],
        native_form="schwarzschild",
        expected_residual_tol=1e-9,
        notes=("c = 0 is flat space with zero fluid",),
    )


def gamma_zero(c1: float = 1.0, c2: float = 1.0) -> AnalyticModel:
    """Spatially flat slice: gamma = 0, rho = 1/(2 pi r^2 + c1), f = sqrt(c2) (2 pi r^2 + c1).

    The fluid fills all of space (rho -> 0 only as r -> infinity), so there is
    no surface to match; the model is flagged unbounded.
    """
    if c1 <= 0 or c2 <= 0:
        raise BadParams(f"need c1, c2 > 0, got c1={c1}, c2={c2}")
    domain = (0.0, math.inf)
    TWO_PI = 2.0 * math.pi
    rt = math.sqrt(c2)

    def q(r):
        return TWO_PI * np.asarray(r, dtype=float) ** 2 + c1

    gamma = RadialFunction.constant(0.0, domain)
    f = _rf(
        lambda r: rt * q(r),
        lambda r: rt * 2.0 * TWO_PI * np.asarray(r, dtype=float),
        lambda r: rt * 2.0 * TWO_PI * np.ones_like(np.asarray(r, dtype=float)),
        domain,
    )
    # v = 2 log f; SchwarzschildForm wants v explicitly for the Tolman route
    v = _rf(
        lambda r: np.log(c2) + 2.0 * np.log(q(r)),
        lambda r: 8.0 * math.pi * np.asarray(r, dtype=float) / q(r),
        lambda r: 8.0 * math.pi / q(r)
        - 32.0 * math.pi**2 * np.asarray(r, dtype=float) ** 2 / q(r) ** 2,
        domain,
    )
    ansatz = SchwarzschildForm(gamma, v, domain=domain)
    mu_phys = RadialFunction.constant(0.0, domain)
    rho_phys = _rf(
        lambda r: 1.0 / q(r),
        lambda r: -2.0 * TWO_PI * np.asarray(r, dtype=float) / q(r) ** 2,
        lambda r: (8.0 * TWO_PI**2 * np.asarray(r, dtype=float) ** 2 - 2.0 * TWO_PI * q(r))
        / q(r) ** 3,
        domain,
    )
    fluid = FluidData.from_physical(f, mu_phys, rho_phys)
    piece = Piece(
        label="flat-slice",
        ansatz=ansatz,
        fluid=fluid,
        mu_phys=mu_phys,
        rho_phys=rho_phys,
        interval=(0.05, 20.0),
        scan_interval=(1e-4, 50.0),
    )
    return AnalyticModel(
        "gamma_zero",
        {"c1": c1, "c2": c2},
        [piece],
        native_form="schwarzschild",
        expected_residual_tol=1e-9,
        unbounded=True,
        notes=("unbounded fluid: exempt from surface matching",),
    )


def einstein_static(c: float = 1.0) -> AnalyticModel:
    """Closed static universe: mu = sqrt(3) c, rho = -c/sqrt(3), f = 1."""
    if c <= 0:
        raise BadParams(f"need c > 0, got {c}")
    a = EIGHT_PI * math.sqrt(3.0) * c / 3.0
    r_h = math.sqrt(1.0 / a)
    domain = (0.0, r_h)

    def x(r):
        return 1.0 - a * np.asarray(r, dtype=float) ** 2

    gamma = _rf(
        lambda r: -np.log(x(r)),
        lambda r: 2.0 * a * np.asarray(r, dtype=float) / x(r),
        lambda r: 2.0 * a / x(r) + (2.0 * a * np.asarray(r, dtype=float) / x(r)) ** 2,
        domain,
    )
    v = RadialFunction.constant(0.0, domain)
    ansatz = SchwarzschildForm(gamma, v, domain=domain)
    f = RadialFunction.constant(1.0, domain)
    mu_phys = RadialFunction.constant(math.sqrt(3.0) * c, domain)
    rho_phys = RadialFunction.constant(-c / math.sqrt(3.0), domain)
    fluid = FluidData.from_physical(f, mu_phys, rho_phys)
    piece = Piece(
        label="interior",
        ansatz=ansatz,
        fluid=fluid,
        mu_phys=mu_phys,
        rho_phys=rho_phys,
        interval=(1e-3 * r_h, 0.995 * r_h),
    )
    return AnalyticModel(
        "einstein_static",
        {"c": c},
        [piece],
        native_form="schwarzschild",
        expected_residual_tol=1e-9,
        notes=("lapse is constant: every level set of f is critical",),
    )


# -- quartic-density interior -------------------------------------------------

def _wyman_interior_functions(R: float, M: float):
    """Closed forms for the e^{-gamma} = 1 - r^4/R^4 interior.

    Lapse f = a1 sinh(w/2) + a2 cosh(w/2) with w = asin(sqrt(1 - r^4/R^4));
    (a1, a2) solve the C^1 junction with the vacuum exterior at
    r_b = (2 M R^4)^{1/5}.
    """
    R4 = R**4
    r_b = (2.0 * M * R4) ** 0.2
    s_b = math.sqrt(1.0 - 2.0 * M / r_b)
    h_b = 0.5 * math.asin(s_b)
    # a1 sinh(h_b) + a2 cosh(h_b) = s_b        (continuity of f)
    # a1 cosh(h_b) + a2 sinh(h_b) = -r_b^2/(2 R^2)   (continuity of f')
    rhs2 = -r_b * r_b / (2.0 * R * R)
    # 2x2 solve with determinant sinh^2 - cosh^2 = -1
    a1 = rhs2 * math.cosh(h_b) - s_b * math.sinh(h_b)
    a2 = s_b * math.cosh(h_b) - rhs2 * math.sinh(h_b)

    def x(r):
        return 1.0 - np.asarray(r, dtype=float) ** 4 / R4

    def xp(r):
        return -4.0 * np.asarray(r, dtype=float) ** 3 / R4

    def xpp(r):
        return -12.0 * np.asarray(r, dtype=float) ** 2 / R4

    def w(r):
        return np.arcsin(np.sqrt(x(r)))

    def wp(r):
        r = np.asarray(r, dtype=float)
        return -2.0 * r / (R * R * np.sqrt(x(r)))

    def wpp(r):
        r = np.asarray(r, dtype=float)
        return -2.0 / (R * R * np.sqrt(x(r))) - 4.0 * r**4 / (R**6 * x(r) ** 1.5)

    def fval(r):
        h = 0.5 * w(r)
        return a1 * np.sinh(h) + a2 * np.cosh(h)

    def fslope(r):
        h = 0.5 * w(r)
        return 0.5 * wp(r) * (a1 * np.cosh(h) + a2 * np.sinh(h))

    def fcurv(r):
        h = 0.5 * w(r)
        return 0.5 * wpp(r) * (a1 * np.cosh(h) + a2 * np.sinh(h)) + 0.25 * wp(r) ** 2 * fval(r)

    return r_b, a1, a2, x, xp, xpp, fval, fslope, fcurv


def wyman(R: float = 2.0, M: float = 0.2) -> AnalyticModel:
    """Quartic interior e^{-gamma} = 1 - r^4/R^4 glued to the vacuum exterior.

    Requires 2M < R (equivalently r_b > 2M and r_b < R).  The bundled density
    accessor is the internally consistent 8 pi mu = 5 r^2 / R^4; the historical
    printed form 8 pi mu = (5/R) r^2 is kept as ``mu_printed`` and surfaced by
    a diagnostic verify entry that is expected to fail.
    """
    if not (R > 0 and M > 0 and 2.0 * M < R):
        raise BadParams(f"need R > 0, M > 0, 2M < R; got R={R}, M={M}")
    R4 = R**4
    r_b, a1, a2, x, xp, xpp, fval, fslope, fcurv = _wyman_interior_functions(R, M)

    dom_i = (0.0, R * (1.0 - 1e-9))
    gamma_i = _rf(
        lambda r: -np.log(x(r)),
        lambda r: -xp(r) / x(r),
        lambda r: -xpp(r) / x(r) + (xp(r) / x(r)) ** 2,
        dom_i,
    )
    f_i = _rf(fval, fslope, fcurv, dom_i)
    v_i = _rf(
        lambda r: 2.0 * np.log(fval(r)),
        lambda r: 2.0 * fslope(r) / fval(r),
        lambda r: 2.0 * fcurv(r) / fval(r) - 2.0 * (fslope(r) / fval(r)) ** 2,
        dom_i,
    )
    ansatz_i = SchwarzschildForm(gamma_i, v_i, domain=dom_i)

    def mu_val(r):
        return 5.0 * np.asarray(r, dtype=float) ** 2 / (EIGHT_PI * R4)

    mu_i = _rf(
        mu_val,
        lambda r: 10.0 * np.asarray(r, dtype=float) / (EIGHT_PI * R4),
        lambda r: 10.0 / (EIGHT_PI * R4) * np.ones_like(np.asarray(r, dtype=float)),
        dom_i,
    )
    mu_printed = _rf(
        lambda r: 5.0 * np.asarray(r, dtype=float) ** 2 / (EIGHT_PI * R),
        lambda r: 10.0 * np.asarray(r, dtype=float) / (EIGHT_PI * R),
        lambda r: 10.0 / (EIGHT_PI * R) * np.ones_like(np.asarray(r, dtype=float)),
        dom_i,
    )

    def rho_val(r):
        r = np.asarray(r, dtype=float)
        return (-1.0 / r**2 + x(r) * (2.0 * fslope(r) / (r * fval(r)) + 1.0 / r**2)) / EIGHT_PI

    def rho_d1(r):
        # differentiate 8 pi rho = -1/r^2 + x P, P = 2 f'/(r f) + 1/r^2
        r = np.asarray(r, dtype=float)
        fv, f1, f2 = fval(r), fslope(r), fcurv(r)
        P = 2.0 * f1 / (r * fv) + 1.0 / r**2
        P1 = 2.0 * f2 / (r * fv) - 2.0 * f1 / (r**2 * fv) \
            - 2.0 * f1**2 / (r * fv**2) - 2.0 / r**3
        return (2.0 / r**3 + xp(r) * P + x(r) * P1) / EIGHT_PI

    rho_i = RadialFunction.from_callables(rho_val, d1=rho_d1, domain=(1e-8, dom_i[1]))
    fluid_i = FluidData.from_physical(f_i, mu_i, rho_i)
    piece_i = Piece(
        label="interior",
        ansatz=ansatz_i,
        fluid=fluid_i,
        mu_phys=mu_i,
        rho_phys=rho_i,
        interval=(5e-3 * r_b, r_b),
    )

    dom_o = (2.0 * M, math.inf)
    gamma_o, v_o = _vacuum_gamma_v(M, dom_o)
    ansatz_o = SchwarzschildForm(gamma_o, v_o, domain=dom_o)
    f_o = ansatz_o.lapse()
    zero_o = RadialFunction.constant(0.0, dom_o)
    fluid_o = FluidData(f=f_o, mu=zero_o, rho=zero_o)
    piece_o = Piece(
        label="exterior",
        ansatz=ansatz_o,
        fluid=fluid_o,
        mu_phys=zero_o,
        rho_phys=zero_o,
        interval=(r_b, 40.0 * max(M, 1.0)),
        scan_interval=(r_b, 500.0 * max(M, 1.0)),
    )

    def printed_mu_diagnostic(model: AnalyticModel, grid_n: int):
        lo, hi = piece_i.interval
        grid = chebyshev_grid(lo + 1e-6 * (hi - lo), hi - 1e-6 * (hi - lo), grid_n)
        rep = tolman_residuals(
            gamma_i, v_i, model.extras["mu_printed"], rho_i, grid,
            tol=model.expected_residual_tol,
        )
        return "diagnostic[printed-mu]", rep

    return AnalyticModel(
        "wyman",
        {"R": R, "M": M},
        [piece_i, piece_o],
        native_form="schwarzschild",
        expected_residual_tol=1e-9,
        junction_points=(r_b,),
        extra_verify=(printed_mu_diagnostic,),
        extras={"r_b": r_b, "a1": a1, "a2": a2, "mu_printed": mu_printed},
        notes=(
            "mu accessor uses the self-consistent 5 r^2/(8 pi R^4); "
            "the printed 5 r^2/(8 pi R) variant fails the density equation "
            "and is reported under diagnostic[printed-mu]",
        ),
    )


# -- bounded warped-product star ----------------------------------------------

def _witten_zeros(delta: float, t_max: float) -> list[float]:
    """t with log(cosh t) + delta = k pi (the lapse zeros / pressure poles)."""
    zeros = []
    k = 0
    while True:
        L = k * math.pi - delta
        if L >= 0.0:
            t = math.acosh(math.exp(L))
            if t > t_max:
                break
            zeros.append(t)
        k += 1
        if k > 64:  # pragma: no cover - t_max caps well before this
            break
    return zeros


def witten_stellar(
    n: int = 3,
    A: float = 1.0,
    B: float = 0.0,
    lam: float = 0.0,
    M: float = 1.0,
    t_max: float = 8.0,
) -> AnalyticModel:
    """Bounded star in a warped chart: g = dt^2 + tanh(t)^2 g_{S^2}.

    Lapse f = A sin(log cosh t) + B cos(log cosh t); fluid (geometric units)
    mu = 1 + 5 sech^2 t, rho = -1 - sech^2 t + 2 cot(log cosh t + delta) sech^2 t
    with delta = atan2(B, A).  The lapse vanishes and the pressure diverges
    where log cosh t + delta hits a multiple of pi; the model excludes 1e-6
    neighborhoods of those radii and keeps the windows where f > 0.

    M re-labels the radial coordinate (r~ = M cosh^2 t) without changing the
    geometry; it enters the r~-chart formulas checked by verify().
    """
    if n != 3:
        raise BadParams(f"witten_stellar is a 3-dimensional model, got n={n}")
    if M <= 0:
        raise BadParams(f"need M > 0, got {M}")
    if A == 0.0 and B == 0.0:
        raise BadParams("lapse coefficients A, B cannot both vanish")
    delta = math.atan2(B, A)
    amp = math.hypot(A, B)

    zeros = _witten_zeros(delta, t_max)
    # windows between consecutive zeros (or chart edges) where f > 0
    edges = [0.0] + zeros + [t_max]
    windows = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        if hi - lo <= 2e-6:
            continue
        mid = 0.5 * (lo + hi)
        Lmid = math.log(math.cosh(mid)) + delta
        if amp * math.sin(Lmid) > 0.0:
            # keep clear of the lapse zeros / pressure poles (and the
            # degenerate chart center) by 1e-6 on each side
            windows.append((lo + 1e-6, hi - (1e-6 if hi < t_max else 0.0)))
    if not windows:
        raise BadParams("no window with positive lapse below t_max")
    lo0, hi0 = windows[0]
    domain = (max(lo0, 0.0), hi0)

    def _t(r):
        return np.asarray(r, dtype=float)

    phi = _rf(
        lambda r: np.tanh(_t(r)),
        lambda r: 1.0 / np.cosh(_t(r)) ** 2,
        lambda r: -2.0 * np.tanh(_t(r)) / np.cosh(_t(r)) ** 2,
        domain,
    )
    ansatz = WarpedProduct(phi, domain=domain)

    def L_of(r):
        return np.log(np.cosh(_t(r)))

    def fval(r):
        L = L_of(r)
        return A * np.sin(L) + B * np.cos(L)

    def fslope(r):
        L = L_of(r)
        return (A * np.cos(L) - B * np.sin(L)) * np.tanh(_t(r))

    def fcurv(r):
        t = _t(r)
        L = L_of(r)
        return (A * np.cos(L) - B * np.sin(L)) / np.cosh(t) ** 2 - fval(r) * np.tanh(t) ** 2

    f = _rf(fval, fslope, fcurv, domain)

    def mu_geo(r):
        return 1.0 + 5.0 / np.cosh(_t(r)) ** 2

    def mu_geo_d1(r):
        t = _t(r)
        return -10.0 * np.tanh(t) / np.cosh(t) ** 2

    def rho_geo(r):
        t = _t(r)
        s2 = 1.0 / np.cosh(t) ** 2
        return -1.0 - s2 + 2.0 * s2 / np.tan(L_of(r) + delta)

    def rho_geo_d1(r):
        # rho = -1 - s + 2 s cot(L + delta), s = sech^2 t:
        # s' = -2 s tanh, (cot)' = -csc^2 tanh
        t = _t(r)
        s2 = 1.0 / np.cosh(t) ** 2
        cot = 1.0 / np.tan(L_of(r) + delta)
        return 2.0 * s2 * np.tanh(t) * (1.0 - (1.0 + cot * cot) - 2.0 * cot)

    mu_phys = RadialFunction.from_callables(
        lambda r: (mu_geo(r) - lam) / EIGHT_PI,
        d1=lambda r: mu_geo_d1(r) / EIGHT_PI,
        domain=domain,
    )
    rho_phys = RadialFunction.from_callables(
        lambda r: (rho_geo(r) + lam) / EIGHT_PI,
        d1=lambda r: rho_geo_d1(r) / EIGHT_PI,
        domain=domain,
    )
    fluid = FluidData(
        f=f,
        mu=RadialFunction.from_callables(mu_geo, d1=mu_geo_d1, domain=domain),
        rho=RadialFunction.from_callables(rho_geo, d1=rho_geo_d1, domain=domain),
        lam=lam,
    )
    piece = Piece(
        label="star",
        ansatz=ansatz,
        fluid=fluid,
        mu_phys=mu_phys,
        rho_phys=rho_phys,
        interval=(max(0.05, domain[0] + 0.05), min(domain[1], t_max) - 0.05),
        scan_interval=domain,
    )

    def tilde_chart_check(model: AnalyticModel, grid_n: int):
        lo, hi = piece.interval
        grid = chebyshev_grid(lo, hi, grid_n)
        r_t = M * np.cosh(grid) ** 2
        mu_res = np.abs(
            EIGHT_PI * np.array([model.mu(t) for t in grid])
            - (1.0 + 5.0 * M / r_t - lam)
        )
        # phase delta = atan2(B, A); the printed sine-branch form is delta = 0
        rho_claim = (
            2.0 * M / (r_t * np.tan(np.log(np.sqrt(r_t / M)) + delta))
            - M / r_t - 1.0 + lam
        )
        rho_res = np.abs(EIGHT_PI * np.array([model.rho(t) for t in grid]) - rho_claim)
        entries = [
            ResidualEntry("tilde-density", *_max_rms_worst(mu_res, grid)),
            ResidualEntry("tilde-pressure", *_max_rms_worst(rho_res, grid)),
        ]
        worst = max(e.max for e in entries)
        rep = ResidualReport(
            entries=tuple(entries), grid=np.asarray(grid), passed=worst <= 1e-9, tol=1e-9
        )
        return "tilde-chart[star]", rep

    def sectional_check(model: AnalyticModel, grid_n: int):
        lo, hi = piece.interval
        grid = np.linspace(lo, hi, 1000)
        k_rad = 2.0 / np.cosh(grid) ** 2
        k_tan = 1.0 + 1.0 / np.cosh(grid) ** 2
        viol_rad = np.maximum(0.0, -k_rad)
        viol_tan = np.maximum(0.0, -k_tan)
        entries = [
            ResidualEntry("positivity[rad]", *_max_rms_worst(viol_rad, grid)),
            ResidualEntry("positivity[tan]", *_max_rms_worst(viol_tan, grid)),
        ]
        worst = max(e.max for e in entries)
        rep = ResidualReport(
            entries=tuple(entries), grid=grid, passed=worst == 0.0, tol=0.0
        )
        return "sectional-curvature[star]", rep

    note_windows = ", ".join(f"({a:.4f}, {b:.4f})" for a, b in windows)
    return AnalyticModel(
        "witten_stellar",
        {"n": n, "A": A, "B": B, "lam": lam, "M": M, "t_max": t_max},
        [piece],
        native_form="warped",
        expected_residual_tol=1e-9,
        lam=lam,
        extra_verify=(tilde_chart_check, sectional_check),
        extras={
            "delta": delta,
            "zeros": tuple(zeros),
            "windows": tuple(windows),
            "pressure_pole_formula": "t_k = acosh(exp(k pi - atan2(B, A)))",
        },
        notes=(f"positive-lapse windows below t_max: {note_windows}",),
    )


def witten_pressure_poles(model: AnalyticModel, count: int = 3) -> np.ndarray:
    """First ``count`` pressure poles t_k = acosh(exp(k pi - delta)), k >= 1."""
    if model.id != "witten_stellar":
        raise BadParams("pressure poles are defined for witten_stellar")
    delta = model.extras["delta"]
    out = []
    k = 1
    while len(out) < count:
        L = k * math.pi - delta
        if L > 0.0:
            out.append(math.acosh(math.exp(L)))
        k += 1
    return np.array(out)


def _max_rms_worst(vals: np.ndarray, grid: np.ndarray):
    vals = np.asarray(vals, dtype=float)
    i = int(np.argmax(vals))
    return float(vals[i]), float(np.sqrt(np.mean(vals**2))), float(np.asarray(grid)[i])


# ----------------------------------------------------------------------------
# registry
# ----------------------------------------------------------------------------

MODELS: dict[str, Callable[..., AnalyticModel]] = {
    "schwarzschild_exterior": schwarzschild_exterior,
    "schwarzschild_interior": schwarzschild_interior,
    "gamma_zero": gamma_zero,
    "einstein_static": einstein_static,
    "wyman": wyman,
    "witten_stellar": witten_stellar,
}


def build(model_id: str, **params) -> AnalyticModel:
    try:
        factory = MODELS[model_id]
    except KeyError:
        raise UnknownModel(
            f"unknown model {model_id!r}; known: {', '.join(sorted(MODELS))}"
        ) from None
    return factory(**params)


def parse_model_spec(spec: str) -> AnalyticModel:
    """Build a model from 'id' or 'id:key=val,key=val'."""
    model_id, _, rest = spec.partition(":")
    model_id = model_id.strip()
    params = {}
    if rest:
        for item in rest.split(","):
            key, eq, val = item.partition("=")
            if not eq:
                raise BadParams(f"bad model parameter {item!r} in {spec!r}")
            key = key.strip()
            params[key] = int(val) if key == "n" else float(val)
    return build(model_id, **params)
