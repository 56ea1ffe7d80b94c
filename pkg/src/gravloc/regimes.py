"""Asymptotic laws, regime labels, the quantum-classical crossover and sweeps."""

import csv
import enum
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from ._validation import ConvergenceError, DomainError, check_positive
from .solver import LumpSpec, Mode, log_K, solve_localization, total_energy
from .units import DEFAULT

#: x = lambda'/lambda0 above this is Quantum, below CLASSICAL_BELOW is Classical.
QUANTUM_ABOVE = 10.0
CLASSICAL_BELOW = 0.5


class Regime(str, enum.Enum):
    QUANTUM = "Quantum"
    TRANSITION = "Transition"
    CLASSICAL = "Classical"


_ORDER = {Regime.QUANTUM: 0, Regime.TRANSITION: 1, Regime.CLASSICAL: 2}


@dataclass(frozen=True)
class RegimeClass:
    label: Regime
    x_ratio: float


def asymptote_small(mu, mode=Mode.PAPER, const=DEFAULT):
    """Small-mass law ``lambda' = 3 hbar^2 / (8 pi G M^3)`` (paper mode), cm.

    Derived mode gives half of it. Independent of the inner dispersion.
    """
    mode = Mode(mode)
    M = check_positive("mu", mu) * const.m_p
    lp = 3.0 * const.hbar * const.hbar / (8.0 * math.pi * const.G * M * M * M)
    return lp if mode is Mode.PAPER else 0.5 * lp


def asymptote_large(mu, mode=Mode.PAPER, rho_ref=None, const=DEFAULT):
    """Large-mass law ``lambda' = lambda0 K^(-1/8)`` with density-derived
    ``lambda0``, cm. Scales as ``mu^(-1/2)``."""
    spec = LumpSpec.from_density(mu, rho_ref, mode, const)
    return spec.lambda0 * math.exp(-log_K(spec, const) / 8.0)


def crossover_mu(mode=Mode.PAPER, rho_ref=None, const=DEFAULT):
    """Mass (proton masses) where the two asymptotes meet.

    With ``a mu^-3 = b mu^-1/2`` this is ``(a / b)^(2/5)``, and scales with
    the reference density as ``rho_ref^(1/10)``.
    """
    a = asymptote_small(1.0, mode, const)
    b = asymptote_large(1.0, mode, rho_ref, const)
    return (a / b) ** 0.4


def classify(result, quantum_above=QUANTUM_ABOVE, classical_below=CLASSICAL_BELOW):
    """Label a solution by ``x = lambda'/lambda0``; both boundaries are Transition."""
    x = result.x
    if x > quantum_above:
        label = Regime.QUANTUM
    elif x < classical_below:
        label = Regime.CLASSICAL
    else:
        label = Regime.TRANSITION
    return RegimeClass(label, x)


def _x_of_mu(mu, mode, rho_ref, const, lambda0=None):
    if lambda0 is None:
        spec = LumpSpec.from_density(mu, rho_ref, mode, const)
    else:
        spec = LumpSpec(mu, lambda0, mode)
    return solve_localization(spec, const).x


def boundary_mu(x_target, mode=Mode.PAPER, rho_ref=None, const=DEFAULT,
                lo=1e-3, hi=1e40, tol=1e-12):
    """Mass where the density-derived solution has ``x == x_target``.

    Bisection in ``log10 mu``; ``x`` decreases monotonically with ``mu``.
    """
    check_positive("x_target", x_target)
    a, b = math.log10(lo), math.log10(hi)
    fa = math.log(_x_of_mu(lo, mode, rho_ref, const) / x_target)
    fb = math.log(_x_of_mu(hi, mode, rho_ref, const) / x_target)
    if not fa > 0.0 > fb:
        raise ConvergenceError(
            f"x = {x_target} is not bracketed by mu in [{lo:g}, {hi:g}]",
            residual=min(abs(fa), abs(fb)))
    while b - a > tol:
        m = 0.5 * (a + b)
        fm = math.log(_x_of_mu(10.0 ** m, mode, rho_ref, const) / x_target)
        if fm > 0.0:
            a = m
        else:
            b = m
    return 10.0 ** (0.5 * (a + b))


def transition_width(mode=Mode.PAPER, rho_ref=None, const=DEFAULT,
                     quantum_above=QUANTUM_ABOVE, classical_below=CLASSICAL_BELOW):
    """Decades of mass between the Quantum and Classical boundaries."""
    mu_q = boundary_mu(quantum_above, mode, rho_ref, const)
    mu_c = boundary_mu(classical_below, mode, rho_ref, const)
    return math.log10(mu_c / mu_q)


CSV_FIELDS = ("mu", "lambda0_cm", "lambda_prime_cm", "x", "K_log10", "regime",
              "e0_erg", "ekin_erg", "etotal_erg", "mode")


@dataclass(frozen=True)
class SweepRow:
    mu: float
    lambda0_cm: float
    lambda_prime_cm: float
    x: float
    K_log10: float
    regime: Regime
    e0_erg: float
    ekin_erg: float
    etotal_erg: float
    mode: Mode

    def as_dict(self):
        return {f: getattr(self, f) for f in CSV_FIELDS}


def _fmt(v, precision):
    if isinstance(v, enum.Enum):
        return v.value
    if isinstance(v, float):
        return f"{v:.{precision - 1}e}"
    return str(v)


def round_sig(v, precision):
    """Round a float to ``precision`` significant digits (through its text form)."""
    return float(f"{v:.{precision - 1}e}")


@dataclass
class SweepTable:
    rows: list = field(default_factory=list)

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def to_csv(self, precision=6):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_FIELDS)
        for row in self.rows:
            w.writerow([_fmt(getattr(row, f), precision) for f in CSV_FIELDS])
        return buf.getvalue()

    def to_records(self, precision=None):
        out = []
        for row in self.rows:
            rec = {}
            for f in CSV_FIELDS:
                v = getattr(row, f)
                if isinstance(v, enum.Enum):
                    v = v.value
                elif isinstance(v, float) and precision is not None:
                    v = round_sig(v, precision)
                rec[f] = v
            out.append(rec)
        return out

    def to_json(self, precision=6):
        return json.dumps(self.to_records(precision))


def mu_grid(mu_min, mu_max, points_per_decade):
    """Log-spaced grid including both endpoints exactly."""
    mu_min = check_positive("mu_min", mu_min)
    mu_max = check_positive("mu_max", mu_max)
    if not mu_min < mu_max:
        raise DomainError(f"mu_min must be below mu_max, got {mu_min} >= {mu_max}")
    if int(points_per_decade) != points_per_decade or points_per_decade < 1:
        raise DomainError(f"points_per_decade must be an integer >= 1, got {points_per_decade!r}")
    decades = math.log10(mu_max) - math.log10(mu_min)
    n = int(math.ceil(decades * points_per_decade - 1e-9)) + 1
    grid = np.logspace(math.log10(mu_min), math.log10(mu_max), n)
    grid[0], grid[-1] = mu_min, mu_max
    return [float(g) for g in grid]


def sweep_row(mu, mode=Mode.PAPER, rho_ref=None, const=DEFAULT, lambda0=None):
    mode = Mode(mode)
    if lambda0 is None:
        spec = LumpSpec.from_density(mu, rho_ref, mode, const)
    else:
        spec = LumpSpec(mu, lambda0, mode)
    try:
        res = solve_localization(spec, const)
    except ConvergenceError as exc:
        raise ConvergenceError(f"mu = {mu:g}: {exc}", residual=exc.residual) from exc
    e = total_energy(spec, res.lambda_prime, const)
    return SweepRow(mu=float(mu), lambda0_cm=spec.lambda0,
                    lambda_prime_cm=res.lambda_prime, x=res.x,
                    K_log10=res.log10_K, regime=classify(res).label,
                    e0_erg=e.e0, ekin_erg=e.e_kin, etotal_erg=e.e_total,
                    mode=mode)


def sweep(mu_min, mu_max, points_per_decade, mode=Mode.PAPER, rho_ref=None,
          const=DEFAULT, lambda0=None):
    """Solve on a log grid of masses.

    ``lambda0`` fixes the inner dispersion for every row instead of deriving
    it from ``rho_ref``.
    """
    if lambda0 is not None:
        lambda0 = check_positive("lambda0", lambda0)
    if rho_ref is not None:
        check_positive("rho_ref", rho_ref)
    grid = mu_grid(mu_min, mu_max, points_per_decade)
    return SweepTable([sweep_row(mu, mode, rho_ref, const, lambda0) for mu in grid])


def regimes_monotone(table):
    """True when labels never step back toward Quantum as mu increases."""
    order = [_ORDER[r.regime] for r in table.rows]
    return all(a <= b for a, b in zip(order, order[1:]))
