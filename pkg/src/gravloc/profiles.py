"""Spherically symmetric mass densities and their Fourier amplitudes.

The amplitude of a density rho(r) at wavenumber k is

    rho~(k) = (2 pi)^(-3/2) * 4 pi * int_0^inf r^2 rho(r) sinc(k r) dr

with sinc(z) = sin(z)/z, so that ``rho~(0) = M / (2 pi)^(3/2)``.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from ._validation import DomainError, check_positive

TWO_PI_32 = (2.0 * math.pi) ** 1.5

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(8)


def _sinc(z):
    return np.sinc(np.asarray(z) / np.pi)


class DensityProfile:
    """Base class. Subclasses supply ``total_mass``, ``length_scale`` and
    ``_amplitude`` (vectorised over non-negative ``k``)."""

    total_mass: float
    length_scale: float
    #: Wavenumber beyond which the energy integrand is negligible.
    k_max = math.inf

    def amplitude(self, k):
        return self._amplitude(np.asarray(k, dtype=float))

    def _amplitude(self, k):  # pragma: no cover - abstract
        raise NotImplementedError


@dataclass(frozen=True)
class Gaussian(DensityProfile):
    """Isotropic Gaussian density of dispersion ``dispersion`` (cm)."""

    dispersion: float
    total_mass: float

    def __post_init__(self):
        check_positive("dispersion", self.dispersion)
        check_positive("total_mass", self.total_mass)

    @property
    def length_scale(self):
        return self.dispersion

    def density(self, r):
        lam = self.dispersion
        return (self.total_mass * np.exp(-np.asarray(r) ** 2 / (2 * lam * lam))
                / (TWO_PI_32 * lam ** 3))

    def _amplitude(self, k):
        return self.total_mass * np.exp(-0.5 * (self.dispersion * k) ** 2) / TWO_PI_32


@dataclass(frozen=True)
class UniformBall(DensityProfile):
    """Constant density inside ``radius`` (cm), zero outside."""

    radius: float
    total_mass: float

    def __post_init__(self):
        check_positive("radius", self.radius)
        check_positive("total_mass", self.total_mass)

    @property
    def length_scale(self):
        return self.radius

    def density(self, r):
        rho = 3.0 * self.total_mass / (4.0 * math.pi * self.radius ** 3)
        return np.where(np.asarray(r) <= self.radius, rho, 0.0)

    def _amplitude(self, k):
        z = np.atleast_1d(k * self.radius)
        out = np.empty_like(z)
        small = z < 1e-2
        zs = z[small] ** 2
        out[small] = 1.0 - zs / 10.0 + zs * zs / 280.0 - zs ** 3 / 15120.0
        zb = z[~small]
        out[~small] = 3.0 * (np.sin(zb) - zb * np.cos(zb)) / zb ** 3
        out = out.reshape(np.shape(k))
        return self.total_mass * out / TWO_PI_32


@dataclass(frozen=True)
class Exponential(DensityProfile):
    """Density proportional to exp(-r / scale)."""

    scale: float
    total_mass: float

    def __post_init__(self):
        check_positive("scale", self.scale)
        check_positive("total_mass", self.total_mass)

    @property
    def length_scale(self):
        return self.scale

    def density(self, r):
        a = self.scale
        return self.total_mass * np.exp(-np.asarray(r) / a) / (8.0 * math.pi * a ** 3)

    def _amplitude(self, k):
        return self.total_mass / (TWO_PI_32 * (1.0 + (k * self.scale) ** 2) ** 2)


@dataclass(frozen=True)
class Tabulated(DensityProfile):
    """Radial samples joined by straight lines.

    The density is zero outside ``[r[0], r[-1]]``. ``total_mass`` is the
    exact mass of the interpolant and is not an input.

    The transform of the interpolant is computed segment by segment:
    Gauss-Legendre on segments short in phase (``k h < 1/2``, where the
    8-point rule is exact to rounding), exact antiderivatives on long
    segments away from the origin, and sub-panelled Gauss-Legendre on the
    few long segments with ``k r < 1`` where the antiderivatives cancel.

    Parameters
    ----------
    r : sequence of float
        Strictly increasing radii (cm), at least four of them.
    rho : sequence of float
        Non-negative densities (g/cm^3) at ``r``.
    """

    r: tuple
    rho: tuple
    total_mass: float = field(init=False)

    def __post_init__(self):
        r = np.asarray(self.r, dtype=float)
        rho = np.asarray(self.rho, dtype=float)
        if r.ndim != 1 or r.shape != rho.shape:
            raise DomainError("r and rho must be 1-D sequences of equal length")
        if r.size < 4:
            raise DomainError(f"tabulated profile needs at least 4 samples, got {r.size}")
        if not np.all(np.isfinite(r)) or not np.all(np.isfinite(rho)):
            raise DomainError("tabulated samples must be finite")
        if r[0] < 0 or np.any(np.diff(r) <= 0):
            raise DomainError("r must be non-negative and strictly increasing")
        if np.any(rho < 0):
            raise DomainError("rho must be non-negative")
        object.__setattr__(self, "r", tuple(r.tolist()))
        object.__setattr__(self, "rho", tuple(rho.tolist()))
        mass = 4.0 * math.pi * self._radial_integral(0.0)
        check_positive("total_mass", mass)
        object.__setattr__(self, "total_mass", mass)

    @property
    def length_scale(self):
        return self.r[-1]

    @property
    def k_max(self):
        # past the sample spacing the interpolant's amplitude falls as k^-3
        return 20.0 * math.pi / float(np.min(np.diff(self.r)))

    def density(self, r):
        return np.interp(r, self.r, self.rho, left=0.0, right=0.0)

    @staticmethod
    def _gl(a, b, rho_a, rho_b, k):
        """int_a^b r^2 rho(r) sinc(k r) dr per segment, one 8-point panel each."""
        half = 0.5 * (b - a)
        s = 0.5 * (_GL_NODES + 1.0)
        x = (0.5 * (a + b))[:, None] + half[:, None] * _GL_NODES
        dens = rho_a[:, None] + (rho_b - rho_a)[:, None] * s
        return np.sum(half[:, None] * _GL_WEIGHTS * x * x * dens * _sinc(k * x), axis=1)

    @staticmethod
    def _exact(a, b, rho_a, rho_b, k):
        """Same integral from antiderivatives of r sin(kr) and r^2 sin(kr)."""
        beta = (rho_b - rho_a) / (b - a)
        alpha = rho_a - beta * a

        def f1(r):
            return np.sin(k * r) / k ** 2 - r * np.cos(k * r) / k

        def f2(r):
            return 2.0 * r * np.sin(k * r) / k ** 2 + (2.0 / k ** 3 - r * r / k) * np.cos(k * r)

        return (alpha * (f1(b) - f1(a)) + beta * (f2(b) - f2(a))) / k

    def _radial_integral(self, k):
        r = np.asarray(self.r)
        rho = np.asarray(self.rho)
        a, b, ra, rb = r[:-1], r[1:], rho[:-1], rho[1:]
        phase = k * (b - a)
        short = phase < 0.5
        far = ~short & (k * a >= 1.0)
        near = ~short & ~far
        total = np.sum(self._gl(a[short], b[short], ra[short], rb[short], k))
        if np.any(far):
            total += np.sum(self._exact(a[far], b[far], ra[far], rb[far], k))
        for i in np.flatnonzero(near):
            n = int(math.ceil(2.0 * phase[i]))
            t = np.linspace(0.0, 1.0, n + 1)
            edges = a[i] + (b[i] - a[i]) * t
            vals = ra[i] + (rb[i] - ra[i]) * t
            total += np.sum(self._gl(edges[:-1], edges[1:], vals[:-1], vals[1:], k))
        return float(total)

    def _amplitude(self, k):
        flat = np.atleast_1d(k).ravel()
        out = np.array([4.0 * math.pi * self._radial_integral(float(kk)) for kk in flat])
        return out.reshape(np.shape(k)) / TWO_PI_32


def fourier_amplitude(profile, k):
    """Mass-weighted Fourier amplitude ``rho~(k)`` in grams.

    ``k`` may be a scalar or an array of non-negative wavenumbers (cm^-1).
    """
    k_arr = np.asarray(k, dtype=float)
    if np.any(np.isnan(k_arr)) or np.any(k_arr < 0):
        raise DomainError(f"wavenumber k must be non-negative, got {k!r}")
    out = profile.amplitude(k_arr)
    return float(out) if np.ndim(out) == 0 else out


def effective_dispersion(lambda0, lambda_prime):
    """Dispersion of the inner density convolved with the centre-of-mass spread."""
    a = check_positive("lambda0", lambda0)
    b = check_positive("lambda_prime", lambda_prime)
    return math.hypot(a, b)


def load_tabulated_csv(path, **kwargs):
    """Read a two-column ``r_cm, rho_g_per_cm3`` CSV (header optional)."""
    rows = []
    with open(path, newline="") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = [p.strip() for p in line.split(",")]
            if len(parts) < 2:
                raise DomainError(f"expected two columns in {path!s}: {line!r}")
            try:
                rows.append((float(parts[0]), float(parts[1])))
            except ValueError:
                if rows:
                    raise DomainError(f"non-numeric row in {path!s}: {line!r}") from None
                # header line
    if not rows:
        raise DomainError(f"no samples in {path!s}")
    r, rho = zip(*rows)
    return Tabulated(r, rho, **kwargs)


__all__ = [
    "DensityProfile", "Gaussian", "UniformBall", "Exponential", "Tabulated",
    "fourier_amplitude", "effective_dispersion", "load_tabulated_csv",
]
