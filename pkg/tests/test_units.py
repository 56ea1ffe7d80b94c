import math

import pytest
from hypothesis import given, strategies as st

from gravloc import Constants, DomainError, constants, lambda0_from_mu, mass_from_mu

mus = st.floats(min_value=1e-3, max_value=1e30, allow_nan=False)


def test_canonical_values():
    c = constants()
    assert c.G == 6.674e-8
    assert c.hbar == 1.0546e-27
    assert c.c == 2.9979e10
    assert c.m_p == 1.6726e-24
    assert c.rho_ref == 1e24


def test_rho_ref_overridable():
    assert Constants(rho_ref=1e27).rho_ref == 1e27


@pytest.mark.parametrize("field", ["G", "hbar", "c", "m_p", "rho_ref"])
def test_constants_must_be_positive(field):
    with pytest.raises(DomainError):
        Constants(**{field: 0.0})


def test_constants_immutable():
    with pytest.raises(Exception):
        constants().G = 1.0


@pytest.mark.parametrize("mu, grams", [(1, 1.6726e-24), (1e10, 1.6726e-14), (1e24, 1.6726)])
def test_mass_from_mu(mu, grams):
    assert mass_from_mu(mu) == pytest.approx(grams, rel=1e-14)


@pytest.mark.parametrize("mu, cm", [(1, 1e-8), (1e24, 1.0), (1e10, 2.154434690031884e-05)])
def test_lambda0_from_mu(mu, cm):
    assert lambda0_from_mu(mu, 1e24) == pytest.approx(cm, rel=1e-12)


@pytest.mark.parametrize("bad", [0, -1.0, math.nan, math.inf])
def test_domain_errors(bad):
    with pytest.raises(DomainError):
        mass_from_mu(bad)
    with pytest.raises(DomainError):
        lambda0_from_mu(bad)
    with pytest.raises(DomainError):
        lambda0_from_mu(1.0, bad)


@given(mus)
def test_cube_root_homogeneity(mu):
    assert lambda0_from_mu(8 * mu) == pytest.approx(2 * lambda0_from_mu(mu), rel=1e-12)


@given(mus, mus)
def test_mass_linear(a, b):
    assert mass_from_mu(a + b) == pytest.approx(mass_from_mu(a) + mass_from_mu(b), rel=1e-12)
