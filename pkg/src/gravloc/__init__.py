"""Gravitationally induced localization of matter lumps.

A lump's centre of mass settles into the Gaussian spread that minimises its
kinetic energy plus the ground-state energy of the massless scalar field it
sources. Small lumps come out delocalised over astronomical distances,
large ones are pinned far below their own size, and the switch happens over
less than a decade of mass around 1e9 to 1e10 proton masses.
"""

from ._validation import ConvergenceError, DomainError
from .gravenergy import (
    GAUSSIAN_RATIO,
    TwoSourceSpec,
    displacement_amplitude,
    e0_closed_gaussian,
    e0_quadrature,
    e0_ratio,
    two_source_force,
    two_source_interaction,
)
from .profiles import (
    Exponential,
    Gaussian,
    Tabulated,
    UniformBall,
    effective_dispersion,
    fourier_amplitude,
    load_tabulated_csv,
)
from .regimes import (
    Regime,
    SweepTable,
    asymptote_large,
    asymptote_small,
    classify,
    crossover_mu,
    sweep,
    transition_width,
)
from .solver import (
    EnergyBreakdown,
    LumpSpec,
    Mode,
    StationaryResult,
    dimensionless_K,
    energy_difference,
    kinetic_energy,
    minimize_energy,
    solve_localization,
    solve_x,
    total_energy,
)
from .units import Constants, constants, lambda0_from_mu, mass_from_mu

__version__ = "0.1.0"
