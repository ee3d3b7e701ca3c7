"""Shared fixtures: expensive models are built once per session."""

import pytest

from staticstar import catalog, conformal, tov


@pytest.fixture(scope="session")
def const_star():
    """Constant-density star, c = 0.001, central pressure 0.0005, matched."""
    eos = tov.EquationOfState.from_spec("constant:c=0.001")
    profile = tov.integrate_tov(eos, 0.0005)
    r_b = tov.detect_surface(profile)
    return tov.match_exterior(profile, r_b)


@pytest.fixture(scope="session")
def vacuum():
    return catalog.build("schwarzschild_exterior", M=1.0)


@pytest.fixture(scope="session")
def witten():
    return catalog.build("witten_stellar")


@pytest.fixture(scope="session")
def wyman():
    return catalog.build("wyman", R=2.0, M=0.2)


@pytest.fixture(scope="session")
def conformal_witten():
    return conformal.build_model("witten", n=3)
