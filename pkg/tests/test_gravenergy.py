import math

import numpy as np
import pytest
from scipy import integrate, special

from gravloc import (
    DomainError,
    Exponential,
    Gaussian,
    Tabulated,
    TwoSourceSpec,
    UniformBall,
    displacement_amplitude,
    e0_closed_gaussian,
    e0_quadrature,
    e0_ratio,
    fourier_amplitude,
    two_source_force,
    two_source_interaction,
)
from gravloc.gravenergy import GAUSSIAN_RATIO, loglog_slope

G = 6.674e-8


def real_space_energy(profile, r_max):
    """Oracle: -G int int rho(x) rho(y) / |x - y| over shells.

    A shell of radius s seen from radius r has potential 1/max(r, s).
    """
    def f(s, r):
        w = (4 * math.pi) ** 2 * r * r * s * s
        return w * float(profile.density(r)) * float(profile.density(s)) / max(r, s)

    inner, _ = integrate.dblquad(f, 0, r_max, 0, lambda r: r, epsabs=0, epsrel=1e-10)
    return -G * 2 * inner  # symmetric in r <-> s


def test_closed_form_values():
    assert e0_closed_gaussian(1.0, 1.0) == pytest.approx(-4 * math.pi * G, rel=1e-15)
    assert e0_closed_gaussian(1.0, 1.0) == pytest.approx(-8.3866e-7, rel=1e-4)
    assert e0_closed_gaussian(1.0, 2.0) == e0_closed_gaussian(1.0, 1.0) / 2
    assert e0_closed_gaussian(2.0, 1.0) == 4 * e0_closed_gaussian(1.0, 1.0)
    with pytest.raises(DomainError):
        e0_closed_gaussian(0.0, 1.0)
    with pytest.raises(DomainError):
        e0_closed_gaussian(1.0, -1.0)


def test_gaussian_quadrature_value():
    # int_0^inf exp(-lam^2 k^2) dk = sqrt(pi) / (2 lam)  =>  E = -G M^2 / (sqrt(pi) lam)
    ref_integral, _ = integrate.quad(lambda k: math.exp(-(0.3 * k) ** 2), 0, np.inf)
    assert ref_integral == pytest.approx(math.sqrt(math.pi) / 0.6, rel=1e-12)
    assert e0_quadrature(Gaussian(0.3, 2.0)) == pytest.approx(
        -G * 4.0 / (math.sqrt(math.pi) * 0.3), rel=1e-10)
    assert GAUSSIAN_RATIO == pytest.approx(0.04490, abs=1e-5)
    assert e0_ratio(1.0, 1.0) == pytest.approx(GAUSSIAN_RATIO, rel=1e-10)


def test_ratio_constant_over_grid():
    ratios = [e0_ratio(M, lam) for lam in np.logspace(-6, 2, 5) for M in np.logspace(-12, 0, 5)]
    assert np.std(ratios, ddof=1) < 1e-8 * np.mean(ratios)


@pytest.mark.parametrize("lam", [1e-3, 1.0, 50.0])
def test_quadrature_inverse_length(lam):
    e1 = e0_quadrature(Gaussian(lam, 1.0))
    e2 = e0_quadrature(Gaussian(2 * lam, 1.0))
    assert e2 / e1 == pytest.approx(0.5, abs=1e-8)


@pytest.mark.parametrize("make", [
    lambda s: UniformBall(s, 1.0),
    lambda s: Exponential(0.5 * s, 1.0),
], ids=["ball", "exponential"])
def test_size_scaling(make):
    assert e0_quadrature(make(3.0)) / e0_quadrature(make(1.0)) == pytest.approx(1 / 3, rel=1e-8)


def test_ball_against_real_space_oracle():
    g = Gaussian(1.0, 1.0)
    gauss_ratio = e0_quadrature(g) / real_space_energy(g, 12.0)
    b = UniformBall(1.0, 1.0)
    ball_ratio = e0_quadrature(b) / real_space_energy(b, 1.0)
    assert ball_ratio == pytest.approx(gauss_ratio, rel=1e-6)
    # textbook self-energy of a uniform ball is -3 G M^2 / (5 R), i.e. half
    assert e0_quadrature(b) == pytest.approx(2 * (-3 * G / 5), rel=1e-8)


def test_tabulated_energy_close_to_gaussian():
    g = Gaussian(1.0, 1.0)
    r = np.arange(0, 12, 5e-3)
    t = Tabulated(r, g.density(r))
    assert e0_quadrature(t) == pytest.approx(e0_quadrature(g), rel=1e-4)


def test_displacement_amplitude():
    g = Gaussian(1.0, 1.0)
    coupling = math.sqrt(4 * math.pi * G / (2.9979e10 * 1.0546e-27))
    assert displacement_amplitude(g, 1.0) == pytest.approx(
        coupling * math.exp(-0.5) / (2 * math.pi) ** 1.5, rel=1e-14)
    # independent 40-digit evaluation with the fixed constants
    assert displacement_amplitude(g, 1.0) == pytest.approx(6272.324738975009, rel=1e-13)


def test_displacement_scaling():
    flat = Gaussian(1e-6, 1.0)
    ratio = displacement_amplitude(flat, 2.0) / displacement_amplitude(flat, 1.0)
    assert ratio == pytest.approx(2 ** -1.5, rel=1e-9)
    g1, g2 = Exponential(1.0, 1.0), Exponential(1.0, 2.0)
    assert displacement_amplitude(g2, 0.7) == pytest.approx(2 * displacement_amplitude(g1, 0.7))
    k = np.array([0.1, 1.0, 10.0])
    assert displacement_amplitude(g1, k).shape == (3,)


@pytest.mark.parametrize("k", [0.0, -1.0])
def test_displacement_rejects_nonpositive_k(k):
    with pytest.raises(DomainError):
        displacement_amplitude(Gaussian(1.0, 1.0), k)


def erf_oracle(m1, m2, sigma, d):
    # int_0^inf e^{-a k^2} sin(k d) / k dk = (pi/2) erf(d / (2 sqrt a)), with a = sigma^2
    return -2 * G * m1 * m2 * special.erf(d / (2 * sigma)) / d


@pytest.mark.parametrize("d", [0.3, 1.0, 4.0, 20.0, 150.0, 250.0, 1e4, 1e7])
def test_interaction_against_erf(d):
    spec = TwoSourceSpec(1.5, 0.5, 1.0, d)
    assert two_source_interaction(spec) == pytest.approx(erf_oracle(1.5, 0.5, 1.0, d), rel=1e-10)


def test_interaction_at_zero_separation():
    spec = TwoSourceSpec(2.0, 3.0, 0.5, 0.0)
    g1, g2 = Gaussian(0.5, 2.0), Gaussian(0.5, 3.0)
    cross, _ = integrate.quad(lambda k: fourier_amplitude(g1, k) * fourier_amplitude(g2, k),
                              0, np.inf, epsabs=0, epsrel=1e-12)
    assert two_source_interaction(spec) == pytest.approx(
        -8 * math.pi * G * 4 * math.pi * cross, rel=1e-10)
    assert math.isfinite(two_source_interaction(spec))


def test_interaction_vanishes_far_away():
    near = two_source_interaction(TwoSourceSpec(1, 1, 1, 10.0))
    far = two_source_interaction(TwoSourceSpec(1, 1, 1, 1e6))
    farther = two_source_interaction(TwoSourceSpec(1, 1, 1, 1e10))
    assert abs(far) < 1e-4 * abs(near)
    assert abs(farther) < 1e-3 * abs(far)


@pytest.mark.parametrize("d", [20.0, 40.0, 100.0])
def test_interaction_inverse_distance(d):
    e1 = two_source_interaction(TwoSourceSpec(1, 1, 1, d))
    e2 = two_source_interaction(TwoSourceSpec(1, 1, 1, 2 * d))
    assert e2 / e1 == pytest.approx(0.5, rel=1e-2)


def test_interaction_bilinear():
    e1 = two_source_interaction(TwoSourceSpec(1, 1, 1, 3.0))
    e2 = two_source_interaction(TwoSourceSpec(2, 1, 1, 3.0))
    assert e2 == pytest.approx(2 * e1, rel=1e-14)


@pytest.mark.parametrize("d", [5.0, 10.0, 33.0, 100.0])
def test_force_methods_agree(d):
    spec = TwoSourceSpec(1, 1, 1, d)
    fa = two_source_force(spec)
    fd = two_source_force(spec, method="fd")
    assert fd == pytest.approx(fa, rel=1e-6)


@pytest.mark.parametrize("d", [0.1, 1.0, 10.0, 300.0, 1e5])
def test_force_attractive_and_symmetric(d):
    f12 = two_source_force(TwoSourceSpec(1.0, 4.0, 1.0, d))
    f21 = two_source_force(TwoSourceSpec(4.0, 1.0, 1.0, d))
    assert f12 < 0
    assert f12 == f21


@pytest.mark.parametrize("d", [250.0, 3e3, 5e5])
def test_force_against_erf_derivative(d):
    # d/dd [erf(d/2)/d] with sigma = 1
    dE = -2 * G * (math.exp(-d * d / 4) / (math.sqrt(math.pi) * d)
                   - special.erf(d / 2) / d ** 2)
    assert two_source_force(TwoSourceSpec(1, 1, 1.0, d)) == pytest.approx(-dE, rel=1e-9)


def test_force_inverse_square():
    d = np.logspace(1, 2, 15)
    f = [two_source_force(TwoSourceSpec(1, 1, 1.0, x)) for x in d]
    assert loglog_slope(d, f) == pytest.approx(-2.0, abs=0.01)


def test_force_rejects_bad_input():
    with pytest.raises(DomainError):
        two_source_force(TwoSourceSpec(1, 1, 1, 0.0))
    with pytest.raises(DomainError):
        two_source_force(TwoSourceSpec(1, 1, 1, 1.0), method="spline")
    with pytest.raises(DomainError):
        TwoSourceSpec(1, 1, 0.0, 1.0)
