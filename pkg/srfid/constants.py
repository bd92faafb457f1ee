"""Physical constants (CODATA 2018, SI) and unit conversions."""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "PhysicalConstants",
    "CODATA2018",
    "C",
    "HBAR",
    "EPS0",
    "MU0",
    "E_CHARGE",
    "DEBYE",
    "ev_to_angular_frequency",
    "angular_frequency_to_ev",
    "wavenumber",
]


@dataclass(frozen=True)
class PhysicalConstants:
    """
    Physical constants in SI units.

    Attributes
    ----------
    c : :obj:`float`
        Speed of light in vacuum, m/s.
    hbar : :obj:`float`
        Reduced Planck constant, J s.
    mu0 : :obj:`float`
        Vacuum permeability, H/m.
    e : :obj:`float`
        Elementary charge, C.
    debye : :obj:`float`
        One debye, C m.

    Notes
    -----
    The vacuum permittivity is derived from `mu0` and `c` so that
    ``mu0 * eps0 * c**2 == 1`` holds to rounding.
    """

    c: float = 299792458.0
    hbar: float = 1.054571817e-34
    mu0: float = 1.25663706212e-6
    e: float = 1.602176634e-19
    debye: float = 1e-21 / 299792458.0

    def __post_init__(self):
        for name in ("c", "hbar", "mu0", "e", "debye"):
            if not getattr(self, name) > 0:
                raise ValueError(f"Physical constant {name} must be positive.")

    @property
    def eps0(self):
        """Vacuum permittivity, F/m."""
        return 1.0 / (self.mu0 * self.c**2)


CODATA2018 = PhysicalConstants()

C = CODATA2018.c
HBAR = CODATA2018.hbar
MU0 = CODATA2018.mu0
EPS0 = CODATA2018.eps0
E_CHARGE = CODATA2018.e
DEBYE = CODATA2018.debye


def ev_to_angular_frequency(energy):
    """
    Convert a photon energy to an angular frequency.

    Parameters
    ----------
    energy : :obj:`float` or array-like
        Photon energy, in eV. Must be non-negative.

    Returns
    -------
    omega : :obj:`float` or :obj:`numpy.ndarray`
        Angular frequency, in rad/s.

    Raises
    ------
    ValueError
        If any energy is negative.
    """
    energy_arr = np.asarray(energy, dtype=float)
    if np.any(energy_arr < 0):
        raise ValueError(f"Photon energy must be non-negative, got {energy}.")
    omega = energy_arr * (E_CHARGE / HBAR)
    return float(omega) if omega.ndim == 0 else omega


def angular_frequency_to_ev(omega):
    """Convert an angular frequency in rad/s to a photon energy in eV."""
    omega_arr = np.asarray(omega, dtype=float)
    if np.any(omega_arr < 0):
        raise ValueError(f"Angular frequency must be non-negative, got {omega}.")
    energy = omega_arr * (HBAR / E_CHARGE)
    return float(energy) if energy.ndim == 0 else energy


def wavenumber(omega):
    """Return the vacuum wave number k0 = omega / c, in 1/m."""
    return omega / C
