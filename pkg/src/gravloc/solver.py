"""Total energy of a lump plus its field cloud, and the localization length.

With ``x = lambda' / lambda0`` the stationarity condition becomes

    (1 + x^2)^3 = K x^8

and everything is solved in ``u = ln x`` with ``ln K`` carried instead of
``K``, because ``K`` spans hundreds of decades over realistic masses.

Two stationarity coefficients are supported (:class:`Mode`):

``PAPER``
    ``K = (64/9) pi^2 G^2 M^6 lambda0^2 / hbar^4``, the published condition.
``DERIVED``
    ``K = (256/9) pi^2 ...``, which is what differentiating the total energy
    actually gives. Only this mode coincides with direct minimisation.
"""

import enum
import math
from dataclasses import dataclass

import mpmath
import numpy as np

from ._validation import ConvergenceError, DomainError, check_positive
from .gravenergy import e0_closed_gaussian
from .profiles import effective_dispersion
from .units import DEFAULT, lambda0_from_mu, mass_from_mu

ROOT_TOL = 1e-12
CURVATURE_STEP = 1e-3


class Mode(str, enum.Enum):
    PAPER = "paper"
    DERIVED = "derived"

    @property
    def coefficient(self):
        return (64.0 if self is Mode.PAPER else 256.0) * math.pi ** 2 / 9.0

    @property
    def coupling(self):
        """Scale on the field energy whose stationary point this mode solves."""
        return 0.5 if self is Mode.PAPER else 1.0


@dataclass(frozen=True)
class LumpSpec:
    """A lump of ``mu`` proton masses with inner dispersion ``lambda0`` (cm)."""

    mu: float
    lambda0: float
    mode: Mode = Mode.PAPER

    def __post_init__(self):
        check_positive("mu", self.mu)
        check_positive("lambda0", self.lambda0)
        object.__setattr__(self, "mode", Mode(self.mode))

    @classmethod
    def from_density(cls, mu, rho_ref=None, mode=Mode.PAPER, const=DEFAULT):
        return cls(mu, lambda0_from_mu(mu, rho_ref, const), mode)

    def mass(self, const=DEFAULT):
        return mass_from_mu(self.mu, const)


@dataclass(frozen=True)
class EnergyBreakdown:
    e0: float
    e_kin: float
    e_total: float


@dataclass(frozen=True)
class StationaryResult:
    lambda_prime: float
    x: float
    log_K: float
    residual: float
    curvature_positive: bool
    iterations: int
    mode: Mode
    lambda0: float
    mu: float

    @property
    def K(self):
        try:
            return math.exp(self.log_K)
        except OverflowError:
            return math.inf

    @property
    def log10_K(self):
        return self.log_K / math.log(10.0)


def kinetic_energy(M, lambda_prime, const=DEFAULT):
    """Centre-of-mass kinetic energy ``3 hbar^2 / (8 M lambda'^2)`` (erg)."""
    M = check_positive("M", M)
    lp = check_positive("lambda_prime", lambda_prime)
    return 3.0 * const.hbar * (const.hbar / (8.0 * M * lp)) / lp


def total_energy(spec, lambda_prime, const=DEFAULT):
    """Energy breakdown at centre-of-mass dispersion ``lambda_prime`` (cm)."""
    lp = check_positive("lambda_prime", lambda_prime)
    M = spec.mass(const)
    lam = effective_dispersion(spec.lambda0, lp)
    e0 = e0_closed_gaussian(M, lam, const)
    e_kin = kinetic_energy(M, lp, const)
    return EnergyBreakdown(e0, e_kin, e0 + e_kin)


def log_K(spec, const=DEFAULT):
    """Natural log of the dimensionless stationarity parameter."""
    M = spec.mass(const)
    return (math.log(spec.mode.coefficient) + 2.0 * math.log(const.G)
            + 6.0 * math.log(M) + 2.0 * math.log(spec.lambda0)
            - 4.0 * math.log(const.hbar))


def dimensionless_K(spec, const=DEFAULT):
    """``K`` itself; ``inf`` or ``0.0`` if it leaves double range (use
    :func:`log_K` then)."""
    lk = log_K(spec, const)
    try:
        return math.exp(lk)
    except OverflowError:
        return math.inf


def stationarity_residual(u, lnK):
    """``3 ln(1 + x^2) - 8 ln x - ln K`` at ``x = e^u``; strictly decreasing in u."""
    return 3.0 * np.logaddexp(0.0, 2.0 * u) - 8.0 * u - lnK


def _residual_slope(u):
    # d/du of stationarity_residual, always in (-8, -2)
    s = 0.5 * (1.0 + math.tanh(u))  # x^2 / (1 + x^2)
    return 6.0 * s - 8.0


def solve_log_x(lnK, tol=ROOT_TOL, maxiter=200):
    """Root ``u = ln x`` of the stationarity condition for given ``ln K``.

    Returns ``(u, residual, iterations)``. Bracketed Newton: a Newton step
    that leaves the bracket is replaced by bisection.
    """
    lnK = float(lnK)
    if not math.isfinite(lnK):
        raise DomainError(f"ln K must be finite, got {lnK!r}")
    g = lambda u: float(stationarity_residual(u, lnK))  # noqa: E731
    guesses = sorted((-0.5 * lnK, -0.125 * lnK))
    lo, hi = guesses[0] - 1.0, guesses[1] + 1.0
    g_lo, g_hi = g(lo), g(hi)
    step = 1.0
    for _ in range(200):
        if g_lo > 0.0 > g_hi:
            break
        step *= 2.0
        if g_lo <= 0.0:
            lo -= step
            g_lo = g(lo)
        if g_hi >= 0.0:
            hi += step
            g_hi = g(hi)
    else:
        raise ConvergenceError(f"could not bracket root for ln K = {lnK}",
                               residual=min(abs(g_lo), abs(g_hi)))

    u = 0.5 * (lo + hi)
    for it in range(1, maxiter + 1):
        r = g(u)
        if abs(r) < tol:
            return u, r, it
        if r > 0.0:
            lo = u
        else:
            hi = u
        u_new = u - r / _residual_slope(u)
        if not lo < u_new < hi:
            u_new = 0.5 * (lo + hi)
        if u_new == u:
            break
        u = u_new
    r = g(u)
    if abs(r) < tol:
        return u, r, maxiter
    raise ConvergenceError(f"root not converged for ln K = {lnK}", residual=abs(r))


def solve_x(K):
    """Unique positive root of ``(1 + x^2)^3 = K x^8``."""
    K = check_positive("K", K)
    return math.exp(solve_log_x(math.log(K))[0])


def energy_difference(spec, a, b, const=DEFAULT, coupling=1.0):
    """``E_T(b) - E_T(a)`` (erg) without forming either energy.

    Absolute energies lose the field term's variation to rounding once
    ``lambda' << lambda0``; this form keeps it. ``coupling`` scales the
    field term.
    """
    a = check_positive("a", a)
    b = check_positive("b", b)
    M = spec.mass(const)
    l0 = spec.lambda0
    sa, sb = math.hypot(l0, a), math.hypot(l0, b)
    # -(1/sb - 1/sa) = (b^2 - a^2) / (sa sb (sa + sb))
    d_field = 4.0 * math.pi * const.G * M * M * (b - a) * (b + a) / (sa * sb * (sa + sb))
    # 1/b^2 - 1/a^2 = (a - b)(a + b) / (a^2 b^2)
    d_kin = 3.0 * const.hbar * const.hbar / (8.0 * M) * ((a - b) / (a * b)) * ((a + b) / (a * b))
    return coupling * d_field + d_kin


def solve_localization(spec, const=DEFAULT):
    """Maximum localization length for ``spec``.

    The curvature flag checks that the energy rises at ``lambda' (1 +/- 1e-3)``.
    In derived mode that is the total energy; in paper mode it is the energy
    with the field term halved, whose stationary point is the published
    condition.
    """
    lnK = log_K(spec, const)
    u, res, it = solve_log_x(lnK)
    x = math.exp(u)
    lp = spec.lambda0 * x
    k = spec.mode.coupling
    curv = (energy_difference(spec, lp, lp * (1 - CURVATURE_STEP), const, k) > 0.0
            and energy_difference(spec, lp, lp * (1 + CURVATURE_STEP), const, k) > 0.0)
    return StationaryResult(lambda_prime=lp, x=x, log_K=lnK, residual=res,
                            curvature_positive=curv, iterations=it,
                            mode=spec.mode, lambda0=spec.lambda0, mu=spec.mu)


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def minimize_energy(spec, const=DEFAULT, rtol=1e-10, dps=40):
    """Minimise the total energy over ``ln lambda'`` by golden-section search.

    Independent of the root solver: it only compares energies. Energies are
    evaluated with ``dps`` significant digits, since a double-precision
    comparison cannot locate a minimum better than about 1e-8 relative.
    """
    with mpmath.workdps(dps):
        G = mpmath.mpf(const.G)
        hbar = mpmath.mpf(const.hbar)
        M = mpmath.mpf(spec.mu) * mpmath.mpf(const.m_p)
        l0sq = mpmath.mpf(spec.lambda0) ** 2
        c0 = 4 * mpmath.pi * G * M * M
        c1 = 3 * hbar * hbar / (8 * M)

        def energy(u):
            lp2 = mpmath.exp(2 * u)
            return -c0 / mpmath.sqrt(l0sq + lp2) + c1 / lp2

        # walk downhill from lambda' = lambda0 until the minimum is bracketed
        u0 = mpmath.log(mpmath.mpf(spec.lambda0))
        step = mpmath.mpf(1)
        a, b = u0, u0 + step
        fa, fb = energy(a), energy(b)
        if fb > fa:
            a, b, fa, fb = b, a, fb, fa
            step = -step
        c = b + step
        fc = energy(c)
        n = 0
        while fc <= fb:
            n += 1
            if n > 2000:
                raise ConvergenceError("could not bracket energy minimum")
            step *= 2
            a, fa, b, fb = b, fb, c, fc
            c = b + step
            fc = energy(c)
        lo, hi = (a, c) if a < c else (c, a)

        tol = mpmath.mpf(rtol) / 10
        inv_phi = mpmath.mpf(_INV_PHI)
        p = hi - inv_phi * (hi - lo)
        q = lo + inv_phi * (hi - lo)
        fp, fq = energy(p), energy(q)
        while hi - lo > tol:
            if fp < fq:
                hi, q, fq = q, p, fp
                p = hi - inv_phi * (hi - lo)
                fp = energy(p)
            else:
                lo, p, fp = p, q, fq
                q = lo + inv_phi * (hi - lo)
                fq = energy(q)
        return float(mpmath.exp((lo + hi) / 2))
