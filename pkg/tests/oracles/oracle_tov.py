"""Oracle for interior-solution closed forms used to cross-check the integrator.

Two independent exact references:

1. Constant-density star (interior Schwarzschild).  For mu = c and central
   pressure rho_c, the full solution is classical:

       y(r)   = sqrt(1 - 2 M r^2 / R_b^3),     y_b = y(R_b) = sqrt(1 - 2M/R_b)
       rho(r) = c (y(r) - y_b) / (3 y_b - y(r))
       f(r)   = (3/2) y_b - (1/2) y(r)
       m(r)   = (4 pi / 3) c r^3

   with the star radius fixed by  y_b = (c + rho_c) / (c + 3 rho_c).
   Derived here from scratch (and verified against the TOV equations
   symbolically), then frozen numerically for c = 0.001, rho_c = 0.0005.

2. Quartic-interior model (verification of the junction data the catalog
   uses): e^{-gamma} = 1 - r^4/R^4, f = a1 sinh(w/2) + a2 cosh(w/2) with
   w = asin(sqrt(1 - r^4/R^4)), matched C^1 to the vacuum exterior at
   r_b = (2 M R^4)^{1/5}.  The oracle solves the 2x2 junction system
   exactly and confirms the Tolman-form equations hold with
   8 pi mu = 5 r^2 / R^4 and the pressure from the second Tolman equation.
"""

import sympy as sp


def constant_density_symbolic():
    r, c, Rb = sp.symbols("r c R_b", positive=True)
    M = sp.Rational(4, 3) * sp.pi * c * Rb**3
    y = sp.sqrt(1 - 2 * M * r**2 / Rb**3)
    yb = sp.sqrt(1 - 2 * M / Rb)
    rho = c * (y - yb) / (3 * yb - y)
    m = sp.Rational(4, 3) * sp.pi * c * r**3
    f = sp.Rational(3, 2) * yb - sp.Rational(1, 2) * y
    x = 1 - 2 * m / r
    v = 2 * sp.log(f)
    print("== constant-density interior, symbolic TOV check ==")
    print(f"  x - y^2 = {sp.simplify(x - y**2)}")
    t1 = 8 * sp.pi * c - (1 - sp.diff(r * x, r)) / r**2
    t2 = 8 * sp.pi * rho - (-1 / r**2 + x * (sp.diff(v, r) / r + 1 / r**2))
    t3 = 2 * sp.diff(rho, r) + sp.diff(v, r) * (rho + c)
    print(f"  density residual:      {sp.simplify(t1)}")
    print(f"  pressure residual:     {sp.simplify(t2)}")
    print(f"  conservation residual: {sp.simplify(t3)}")
    print(f"  rho(R_b) = {sp.simplify(rho.subs(r, Rb))},  f(R_b) - y_b = "
          f"{sp.simplify(f.subs(r, Rb) - yb)}")
    # TOV form: rho' = -(m + 4 pi r^3 rho)(mu + rho)/(r (r - 2m))
    tov_rhs = -(m + 4 * sp.pi * r**3 * rho) * (c + rho) / (r * (r - 2 * m))
    print(f"  rho' - TOV rhs:        {sp.simplify(sp.diff(rho, r) - tov_rhs)}")


def constant_density_numbers():
    c = sp.Rational(1, 1000)
    rho_c = sp.Rational(1, 2000)
    yb = (c + rho_c) / (c + 3 * rho_c)
    Rb2 = (1 - yb**2) * 3 / (8 * sp.pi * c)
    Rb = sp.sqrt(Rb2)
    M = sp.Rational(4, 3) * sp.pi * c * Rb**3
    print("== constant-density frozen numbers (c=0.001, rho_c=0.0005) ==")
    print(f"  y_b = {yb} = {sp.N(yb, 22)}")
    print(f"  R_b = {sp.N(Rb, 22)}")
    print(f"  M   = {sp.N(M, 22)}")
    print(f"  2M/R_b = {sp.N(2*M/Rb, 22)}")
    r = sp.symbols("r", positive=True)
    y = sp.sqrt(1 - 2 * M * r**2 / Rb**3)
    rho = c * (y - yb) / (3 * yb - y)
    f = sp.Rational(3, 2) * yb - sp.Rational(1, 2) * y
    for rv in (sp.Rational(1, 2), 2, 5, 8):
        print(f"  r={rv}: rho={sp.N(rho.subs(r, rv), 22)}, f={sp.N(f.subs(r, rv), 22)}, "
              f"e^-gamma={sp.N((y**2).subs(r, rv), 22)}")
    # central pressure sanity: rho(0) with y(0)=1
    print(f"  rho(0) = {sp.N(rho.subs(r, 0), 22)}")


def quartic_interior(R_val=2, M_val=sp.Rational(1, 5)):
    R, M, r = sp.symbols("R M r", positive=True)
    rb = (2 * M * R**4) ** sp.Rational(1, 5)
    x = 1 - r**4 / R**4
    s = sp.sqrt(x)
    w = sp.asin(s)
    a1, a2 = sp.symbols("a1 a2", real=True)
    f = a1 * sp.sinh(w / 2) + a2 * sp.cosh(w / 2)
    # junction: f(rb) = sqrt(1 - 2M/rb) = s(rb), f'(rb) = M / (rb^2 sqrt(1-2M/rb))
    sb = sp.sqrt(1 - rb**4 / R**4)
    hb = sp.asin(sb) / 2
    eq1 = sp.Eq(a1 * sp.sinh(hb) + a2 * sp.cosh(hb), sb)
    eq2 = sp.Eq(a1 * sp.cosh(hb) + a2 * sp.sinh(hb), -rb**2 / (2 * R**2))
    sol = sp.solve([eq1, eq2], [a1, a2])
    subs = {R: R_val, M: M_val}
    a1_v = sp.N(sol[a1].subs(subs), 30)
    a2_v = sp.N(sol[a2].subs(subs), 30)
    print(f"== quartic interior, R={R_val}, M={M_val} ==")
    print(f"  r_b = {sp.N(rb.subs(subs), 22)}")
    print(f"  2M/r_b = {sp.N((2*M/rb).subs(subs), 22)}  (must be < 1)")
    print(f"  a1 = {a1_v}")
    print(f"  a2 = {a2_v}")
    # Tolman residuals with mu = 5 r^2/(8 pi R^4), rho from pressure equation
    fx = f.subs(sol)
    v = 2 * sp.log(fx)
    mu = 5 * r**2 / (8 * sp.pi * R**4)
    t1 = 8 * sp.pi * mu - (1 - sp.diff(r * x, r)) / r**2
    print(f"  density residual (variant mu): {sp.simplify(t1)}")
    rho = (-1 / r**2 + x * (sp.diff(v, r) / r + 1 / r**2)) / (8 * sp.pi)
    t3 = 2 * sp.diff(rho, r) + sp.diff(v, r) * (rho + mu)
    t3_num = [sp.N(t3.subs(subs).subs(r, rv), 30)
              for rv in (sp.Rational(3, 10), sp.Rational(1, 2), 1)]
    print(f"  conservation residual at r=0.3,0.5,1.0: {t3_num}")
    # frozen samples
    for rv in (sp.Rational(3, 10), sp.Rational(3, 4), 1):
        print(f"  r={rv}: f={sp.N(fx.subs(subs).subs(r, rv), 22)}, "
              f"rho={sp.N(rho.subs(subs).subs(r, rv), 22)}, "
              f"mu={sp.N(mu.subs(subs).subs(r, rv), 22)}")
    # printed-density variant for the diagnostic: 8 pi mu = (5/R) r^2
    mu_printed = 5 * r**2 / (8 * sp.pi * R)
    t1p = 8 * sp.pi * mu_printed - (1 - sp.diff(r * x, r)) / r**2
    print(f"  density residual with printed mu at r=1: "
          f"{sp.N(t1p.subs(subs).subs(r, 1), 22)}")


def chaplygin_branches():
    """Constant-rho stationary branches of the Chaplygin EOS under TOV flow."""
    r, c = sp.symbols("r c", positive=True)
    print("== Chaplygin mu = -c^2/rho stationary branches ==")
    for rho0, label in [(c, "rho = +c"), (-c, "rho = -c"), (-c / sp.sqrt(3), "rho = -c/sqrt(3)")]:
        mu = -(c**2) / rho0
        m = sp.Rational(4, 3) * sp.pi * mu * r**3
        drho = -(m + 4 * sp.pi * r**3 * rho0) * (mu + rho0) / (r * (r - 2 * m))
        print(f"  {label}: mu = {sp.simplify(mu)}, rho' = {sp.simplify(drho)}")


if __name__ == "__main__":
    constant_density_symbolic()
    constant_density_numbers()
    quartic_interior()
    chaplygin_branches()
