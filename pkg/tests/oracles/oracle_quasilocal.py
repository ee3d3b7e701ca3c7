"""High-precision oracle for quasi-local masses and the level-set topology identity.

Closed forms for the vacuum exterior (mass M, lapse f = sqrt(1-2M/r)):

    level set {f = c}:   r = 2M/(1-c^2),  kappa = |grad f| = M/r^2 = (1-c^2)^2/(4M)
    outward H of the sphere: 2 f / r = c (1-c^2)/M
    Hawking mass:        sqrt(|S|/16 pi) (1 - W/16 pi),  W = integral of H^2
    Brown-York mass:     (1/8 pi) |S| (2/r - H) = r (1 - c) = 2M/(1+c)

The topology identity  2 pi chi = [H (H/4 - kappa/c) - rho0] |S|  requires H
taken with respect to N = -grad f / |grad f| (inward-pointing for increasing
f), i.e. H = -2c/r here; the slack of the Hawking-mass inequality

    2 sqrt(16 pi / |S|) m_H  <=  2 - chi + (kappa / 2 pi c) * int H - rho0 |S| / 2 pi

uses the opposite (outward-positive) orientation sign(f') * H_out.  Both are
evaluated numerically at 50 digits for the vacuum case and for the warped
model phi = tanh t, f = sin(log cosh t) (where rho0 != 0), including a level
value attained twice.  All printed values are frozen into tests.
"""

import mpmath as mp

mp.mp.dps = 50


def vacuum(c, M=1):
    c = mp.mpf(c)
    r = 2 * M / (1 - c**2)
    area = 4 * mp.pi * r**2
    kappa = M / r**2
    h_out = 2 * c / r
    willmore = h_out**2 * area
    m_h = mp.sqrt(area / (16 * mp.pi)) * (1 - willmore / (16 * mp.pi))
    m_by = (1 / (8 * mp.pi)) * area * (2 / r - h_out)
    h_level = -h_out
    chi_resid = 4 * mp.pi - (h_level * (h_level / 4 - kappa / c) - 0) * area
    lhs = 2 * mp.sqrt(16 * mp.pi / area) * m_h
    rhs = 0 + (kappa / (2 * mp.pi * c)) * (-h_level) * area - 0
    print(f"vacuum M={M}, c={c}:")
    print(f"  r = {r}")
    print(f"  kappa = {kappa}")
    print(f"  H_out = {h_out}")
    print(f"  m_hawking = {m_h}")
    print(f"  m_brown_york = {m_by}   (2M/(1+c) = {2*M/(1+c)})")
    print(f"  chi-identity residual (H level-set signed) = {chi_resid}")
    print(f"  chi-identity value with +H instead = "
          f"{4*mp.pi - (h_out*(h_out/4 - kappa/c))*area}")
    print(f"  inequality slack = {rhs - lhs}")


def witten_level(t_left, c=None, label=""):
    """Level-set data for phi = tanh t, f = sin(log cosh t) at the root near t_left."""
    f = lambda t: mp.sin(mp.log(mp.cosh(t)))
    df = lambda t: mp.cos(mp.log(mp.cosh(t))) * mp.tanh(t)
    if c is None:
        c = f(t_left)
        t = mp.mpf(t_left)
    else:
        c = mp.mpf(c)
        t = mp.findroot(lambda tt: f(tt) - c, t_left)
    phi = mp.tanh(t)
    dphi = 1 / mp.cosh(t) ** 2
    area = 4 * mp.pi * phi**2
    h_out = 2 * dphi / phi
    kappa = abs(df(t))
    sgn = mp.sign(df(t))
    h_level = -sgn * h_out
    # geometric fluid data (warped-route formulas, oracle_geometry)
    L = mp.log(mp.cosh(t))
    rho0 = -(mp.sinh(t) ** 2 + 2 - 2 / mp.tan(L)) / mp.cosh(t) ** 2
    willmore = h_out**2 * area
    m_h = mp.sqrt(area / (16 * mp.pi)) * (1 - willmore / (16 * mp.pi))
    chi_resid = 4 * mp.pi - (h_level * (h_level / 4 - kappa / c) - rho0) * area
    lhs = 2 * mp.sqrt(16 * mp.pi / area) * m_h
    rhs = (kappa / (2 * mp.pi * c)) * (-h_level) * area - rho0 * area / (2 * mp.pi)
    h0 = 2 / mp.sqrt(area / (4 * mp.pi))
    m_by = (1 / (8 * mp.pi)) * area * (h0 - h_out)
    print(f"witten level {label}: c = {c}")
    print(f"  t = {t}")
    print(f"  area = {area}")
    print(f"  H_out = {h_out}")
    print(f"  kappa = {kappa}, sign(f') = {sgn}")
    print(f"  rho0 (geometric) = {rho0}")
    print(f"  m_hawking = {m_h}")
    print(f"  m_brown_york = {m_by}")
    print(f"  chi-identity residual = {chi_resid}")
    print(f"  inequality slack = {rhs - lhs}")
    # sphere/torus thresholds, level-set convention
    disc = kappa**2 + c**2 * rho0
    if disc >= 0:
        i_minus = (2 / c) * (kappa - mp.sqrt(disc))
        i_plus = (2 / c) * (kappa + mp.sqrt(disc))
        print(f"  I- = {i_minus},  I+ = {i_plus},  H_level in window: "
              f"{i_minus <= h_level <= i_plus}")
    else:
        print("  thresholds complex")


def flat_sphere():
    area = 4 * mp.pi
    willmore = 4 * area  # H = 2 on the unit sphere
    m_h = mp.sqrt(area / (16 * mp.pi)) * (1 - willmore / (16 * mp.pi))
    print(f"flat unit sphere: willmore = {willmore} (= 16 pi = {16*mp.pi}), "
          f"m_hawking = {m_h}")
    print(f"hawking_mass(16 pi, 0) = "
          f"{mp.sqrt(16*mp.pi/(16*mp.pi)) * (1 - 0)}")


if __name__ == "__main__":
    for c in ("0.1", "0.5", "0.9"):
        vacuum(c)
    flat_sphere()
    witten_level(1.0, label="t=1 (ascending)")
    # same level value, descending branch (f' < 0)
    witten_level(3.0, c=mp.sin(mp.log(mp.cosh(mp.mpf(1)))), label="descending twin")
    # a level near the lapse maximum to exercise near-critical behavior
    witten_level(2.0, label="t=2 (past max? check sign)")
