"""Ground-state energy of the massless scalar field dressing a mass density.

Two routes to the same quantity are provided:

* :func:`e0_closed_gaussian`, the closed form ``-4 pi G M^2 / lambda`` for a
  Gaussian density. Downstream code uses this one.
* :func:`e0_quadrature`, the momentum-space integral
  ``-4 pi G * 4 pi * int_0^inf |rho~(k)|^2 dk`` for any profile.

For a Gaussian the two differ by the constant factor ``1 / (4 pi^(3/2))``;
:func:`e0_ratio` reports it.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate as _spi

from . import _quadrature
from ._validation import ConvergenceError, DomainError, check_nonnegative, check_positive
from .profiles import TWO_PI_32, Gaussian, fourier_amplitude
from .units import DEFAULT

#: Quadrature-to-closed-form ratio expected for Gaussian profiles.
GAUSSIAN_RATIO = 1.0 / (4.0 * math.pi ** 1.5)

# exp(-t^2) < 1e-14 * peak beyond this (t = k * sigma)
_T_MAX = math.sqrt(14.0 * math.log(10.0)) + 1.0


def e0_closed_gaussian(M, lam, const=DEFAULT):
    """Closed-form ground-state energy (erg) for a Gaussian of mass ``M`` (g)
    and dispersion ``lam`` (cm)."""
    M = check_positive("M", M)
    lam = check_positive("lambda", lam)
    return -4.0 * math.pi * const.G * M * M / lam


def e0_quadrature(profile, const=DEFAULT, rtol=1e-10):
    """Ground-state energy (erg) from the momentum-space integral.

    The integral runs in the dimensionless variable ``t = k * L`` with ``L``
    the profile's length scale.

    Raises
    ------
    ConvergenceError
        Carrying the quadrature's error estimate.
    """
    L = profile.length_scale
    if isinstance(profile, Gaussian):
        # Gaussian tails: a finite range is exact to 1e-14 of the peak.
        val, err = _quadrature.integrate(
            lambda t: profile.amplitude(t / L) ** 2, 0.0, _T_MAX, rtol=rtol)
    else:
        def f(t):
            return fourier_amplitude(profile, t / L) ** 2

        val, err, info = _quad(f, rtol, profile.k_max * L)
        if abs(err) > max(1e3 * rtol * abs(val), 1e-300):
            raise ConvergenceError(
                f"e0 quadrature did not converge ({info})", residual=err)
    return -16.0 * math.pi ** 2 * const.G * val / L


def _quad(f, rtol, t_max=np.inf):
    # algebraic tails: split at t = 50 and let QUADPACK map the rest
    split = min(50.0, t_max)
    v1, e1, *_ = _spi.quad(f, 0.0, split, epsabs=0.0, epsrel=rtol, limit=400,
                           full_output=1)
    v2 = e2 = 0.0
    if t_max > split:
        v2, e2, *_ = _spi.quad(f, split, t_max, epsabs=0.0, epsrel=rtol, limit=400,
                               full_output=1)
    return v1 + v2, e1 + e2, "QUADPACK"


def e0_ratio(M, lam, const=DEFAULT):
    """Quadrature over closed form for a Gaussian; ``GAUSSIAN_RATIO`` in theory."""
    return e0_quadrature(Gaussian(lam, M), const) / e0_closed_gaussian(M, lam, const)


def displacement_amplitude(profile, k, const=DEFAULT):
    """Coherent displacement of the field mode at wavenumber ``k`` > 0.

    ``sqrt(4 pi G / (c hbar)) * rho~(k) / k^(3/2)``; undefined at k = 0 where
    it diverges.
    """
    k_arr = np.asarray(k, dtype=float)
    if np.any(np.isnan(k_arr)) or np.any(k_arr <= 0):
        raise DomainError(f"k must be strictly positive, got {k!r}")
    coupling = math.sqrt(4.0 * math.pi * const.G / (const.c * const.hbar))
    return coupling * fourier_amplitude(profile, k_arr) / k_arr ** 1.5


@dataclass(frozen=True)
class TwoSourceSpec:
    """Two Gaussian-smeared point masses ``m1``, ``m2`` (g) of width ``sigma``
    (cm) at separation ``d`` (cm)."""

    m1: float
    m2: float
    sigma: float
    d: float

    def __post_init__(self):
        check_positive("m1", self.m1)
        check_positive("m2", self.m2)
        check_positive("sigma", self.sigma)
        check_nonnegative("d", self.d)


def _sinc(z):
    return np.sinc(z / np.pi)


def _dsinc(z):
    """Derivative of sin(z)/z."""
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    small = np.abs(z) < 0.1
    zs = z[small]
    z2 = zs * zs
    out[small] = zs * (-1.0 / 3.0 + z2 * (1.0 / 30.0 + z2 * (-1.0 / 840.0 + z2 / 45360.0)))
    zb = z[~small]
    out[~small] = (zb * np.cos(zb) - np.sin(zb)) / (zb * zb)
    return out


def _prefactor(spec, const):
    # 8 pi G * 4 pi / (2 pi)^3 / sigma, from t = k * sigma
    return 32.0 * math.pi ** 2 * const.G * spec.m1 * spec.m2 / (TWO_PI_32 ** 2 * spec.sigma)


def _panels(ratio):
    # about two panels per radian of phase at the top of the range
    return max(8, int(2 * _T_MAX * ratio) + 8)


# beyond this d/sigma the Gaussian damps too slowly per cycle for a fixed rule
_OSC_RATIO = 200.0
# beyond this the Fourier-weighted rule loses accuracy too
_FAR_RATIO = 1e5


def _far_field(ratio, rtol):
    """``J(w) = int_0^inf exp(-t^2) sinc(w t) dt`` and ``dJ/dw`` for large w.

    Uses ``sin(w t) / t = int_0^w cos(v t) dv``, which turns J into the
    non-oscillatory ``(1/w) int_0^w (sqrt(pi)/2) exp(-v^2/4) dv``.
    """
    upper = min(ratio, 80.0)  # exp(-v^2/4) underflows past this
    inner, _ = _quadrature.integrate(
        lambda v: 0.5 * math.sqrt(math.pi) * np.exp(-0.25 * v * v), 0.0, upper, rtol=rtol)
    J = inner / ratio
    dJ = (-J + 0.5 * math.sqrt(math.pi) * math.exp(-0.25 * ratio * ratio)) / ratio
    return J, dJ


def _fourier_integral(ratio, f_cos, f_sin, full, rtol):
    """int_0^T_MAX [f_cos(t) cos(w t) + f_sin(t) sin(w t)] dt with w = ratio.

    ``full`` is the whole integrand, used near the origin where ``f_sin``
    may be singular; the rest goes to QUADPACK's Fourier-weighted rule.
    """
    t0 = 2.0 / ratio
    head, _ = _quadrature.integrate(full, 0.0, t0, rtol=rtol)
    tail = 0.0
    for g, weight in ((f_cos, "cos"), (f_sin, "sin")):
        if g is None:
            continue
        v, err, *_ = _spi.quad(g, t0, _T_MAX, weight=weight, wvar=ratio,
                               epsabs=0.0, epsrel=rtol, limit=2000, full_output=1)
        if abs(err) > 1e3 * rtol * max(abs(v), abs(head)):
            raise ConvergenceError("oscillatory quadrature did not converge", residual=err)
        tail += v
    return head + tail


def two_source_interaction(spec, const=DEFAULT, rtol=1e-12):
    """Cross term (erg) of the ground-state energy for two sources.

    ``-8 pi G * 4 pi * int_0^inf rho1~(k) rho2~(k) sinc(k d) dk``. Finite for
    every ``d >= 0``; tends to ``-2 G m1 m2 / d`` for ``d >> sigma``.
    """
    ratio = spec.d / spec.sigma

    def full(t):
        return np.exp(-t * t) * _sinc(ratio * t)

    if ratio > _FAR_RATIO:
        val = _far_field(ratio, rtol)[0]
    elif ratio > _OSC_RATIO:
        val = _fourier_integral(
            ratio, None, lambda t: np.exp(-t * t) / (ratio * t), full, rtol)
    else:
        val, _ = _quadrature.integrate(full, 0.0, _T_MAX, rtol=rtol,
                                       panels=_panels(ratio))
    return -_prefactor(spec, const) * val


def two_source_force(spec, const=DEFAULT, method="analytic", rtol=1e-12):
    """Force (dyn) along the separation, ``-dE_int/dd``.

    Negative values are attractive.

    Parameters
    ----------
    method : {"analytic", "fd"}
        ``"analytic"`` differentiates under the integral sign; ``"fd"`` takes a
        central difference of :func:`two_source_interaction` with step
        ``d * 1e-4``.
    """
    if spec.d <= 0:
        raise DomainError(f"force needs d > 0, got {spec.d!r}")
    if method == "fd":
        h = spec.d * 1e-4
        lo = TwoSourceSpec(spec.m1, spec.m2, spec.sigma, spec.d - h)
        hi = TwoSourceSpec(spec.m1, spec.m2, spec.sigma, spec.d + h)
        return -(two_source_interaction(hi, const, rtol)
                 - two_source_interaction(lo, const, rtol)) / (2.0 * h)
    if method != "analytic":
        raise DomainError(f"unknown force method {method!r}")
    ratio = spec.d / spec.sigma

    def full(t):
        return np.exp(-t * t) * t * _dsinc(ratio * t)

    if ratio > _FAR_RATIO:
        val = _far_field(ratio, rtol)[1]
    elif ratio > _OSC_RATIO:
        # t * dsinc(w t) = cos(w t) / w - sin(w t) / (w^2 t)
        val = _fourier_integral(
            ratio,
            lambda t: np.exp(-t * t) / ratio,
            lambda t: -np.exp(-t * t) / (ratio * ratio * t),
            full, rtol)
    else:
        val, _ = _quadrature.integrate(full, 0.0, _T_MAX, rtol=rtol,
                                       panels=_panels(ratio))
    # dE/dd = -prefactor * val / sigma
    return _prefactor(spec, const) * val / spec.sigma


def loglog_slope(x, y):
    """Least-squares slope of log|y| against log x."""
    return float(np.polyfit(np.log(np.asarray(x, float)),
                            np.log(np.abs(np.asarray(y, float))), 1)[0])
