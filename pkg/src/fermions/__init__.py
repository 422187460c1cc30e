"""Exact ground-state correlators from Jordan–Wigner free fermions."""

from .correlators import correlators, default_r_max, g_function, largest_r, resolve_r_max
from .momentum import finite_g, finite_g_values, ground_energy, momenta, sector_energies
from .quadrature import infinite_energy_density, infinite_g
from .toeplitz import g_window, magnetization, two_point
from .types import (
    CorrelatorSet,
    GFunction,
    GSource,
    Sector,
    SectorEnergies,
    SolverError,
    SolverErrorKind,
)

__all__ = [
    "CorrelatorSet",
    "GFunction",
    "GSource",
    "Sector",
    "SectorEnergies",
    "SolverError",
    "SolverErrorKind",
    "correlators",
    "default_r_max",
    "finite_g",
    "finite_g_values",
    "g_function",
    "g_window",
    "ground_energy",
    "infinite_energy_density",
    "infinite_g",
    "largest_r",
    "magnetization",
    "momenta",
    "resolve_r_max",
    "sector_energies",
    "two_point",
]
