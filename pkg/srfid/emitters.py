"""
Emitter-level quantities derived from the Green tensor.

Every function treats a single transition of a two-level emitter: the
Purcell-modified decay rate, the environment-induced frequency shift, and the
rotational averages of the dipole over its azimuthal orientation.
"""

from dataclasses import dataclass, replace

import numpy as np
from loguru import logger

from . import references
from .constants import C, DEBYE, EPS0, HBAR, MU0
from .due import due
from .errors import CoverageError
from .green.planar import QuadratureControl, checked_quad

__all__ = [
    "Emitter",
    "RateResult",
    "einstein_rate",
    "transition_rate",
    "rate_result",
    "frequency_shift",
    "rot_avg_planar_coincident",
    "rot_avg_planar_cross",
    "rot_avg_sphere",
]


@dataclass(frozen=True, eq=False)
class Emitter:
    """
    A two-level emitter.

    Attributes
    ----------
    omega_t : :obj:`float`
        Transition angular frequency, rad/s, > 0.
    dipole : (3,) :obj:`numpy.ndarray`
        Transition dipole, C m, in the local frame of the emitter (z along the
        surface normal).
    position : object, optional
        Geometry descriptor the emitter belongs to.
    """

    omega_t: float
    dipole: np.ndarray
    position: object = None

    def __post_init__(self):
        if not self.omega_t > 0:
            raise ValueError(
                f"Transition frequency must be positive, got {self.omega_t}."
            )
        dipole = np.array(self.dipole, dtype=float)
        if dipole.shape != (3,):
            raise ValueError(f"Dipole must be a 3-vector, got shape {dipole.shape}.")
        if not np.linalg.norm(dipole) > 0:
            raise ValueError("Dipole moment must be non-zero.")
        dipole.setflags(write=False)
        object.__setattr__(self, "dipole", dipole)

    @classmethod
    def from_debye(cls, omega_t, dipole_debye, position=None):
        """Build an emitter whose dipole is given in debye."""
        return cls(omega_t, np.asarray(dipole_debye, dtype=float) * DEBYE, position)


@dataclass(frozen=True)
class RateResult:
    """
    Decay rate of an emitter in an environment.

    Attributes
    ----------
    gamma_env : :obj:`float`
        Rate change caused by the environment, 1/s.
    gamma_free : :obj:`float`
        Free-space (Einstein) rate, 1/s.
    """

    gamma_env: float
    gamma_free: float

    def __post_init__(self):
        if self.gamma_free < 0:
            raise ValueError(f"Free-space rate must be >= 0, got {self.gamma_free}.")

    @property
    def total(self):
        return self.gamma_free + self.gamma_env

    @property
    def purcell_factor(self):
        """Total rate in units of the free-space rate."""
        return self.total / self.gamma_free


@due.dcite(references.PURCELL_1946)
def einstein_rate(omega, dipole):
    """
    Free-space spontaneous emission rate omega^3 |d|^2 / (3 pi eps0 hbar c^3).

    Parameters
    ----------
    omega : :obj:`float`
        Transition angular frequency, rad/s.
    dipole : array-like
        Transition dipole, C m.

    Returns
    -------
    :obj:`float`
        Rate in 1/s.
    """
    d2 = float(np.sum(np.abs(np.asarray(dipole)) ** 2))
    return omega**3 * d2 / (3 * np.pi * EPS0 * HBAR * C**3)


def _real_tensor(img):
    entries = img.to_local().entries
    if np.iscomplexobj(entries):
        if np.any(entries.imag != 0):
            raise ValueError(
                "Expected the imaginary part of a Green tensor (real entries); "
                "pass `G.imag`."
            )
        entries = entries.real
    return entries


@due.dcite(references.DUNG_KNOLL_WELSCH_2003)
def transition_rate(em, img, average=False):
    """
    Decay rate of a transition, (2 mu0 / hbar) omega_t^2 d . Im G . d.

    Parameters
    ----------
    em : :obj:`Emitter`
        The emitter.
    img : :obj:`srfid.green.GreenTensor`
        Imaginary part of the Green tensor at the emitter position and at
        ``em.omega_t``. Spherical-basis tensors are read in the local frame.
    average : :obj:`bool`, optional
        Average the dipole over its azimuthal orientation around the surface
        normal (see :func:`rot_avg_sphere`).

    Returns
    -------
    :obj:`float`
        Rate in 1/s. Using the free-space coincidence tensor gives
        :func:`einstein_rate`.
    """
    g = _real_tensor(img)
    if average:
        weight = rot_avg_sphere(g[2, 2], 0.5 * (g[0, 0] + g[1, 1]), em.dipole)
    else:
        weight = em.dipole @ g @ em.dipole
    return float(2 * MU0 / HBAR * em.omega_t**2 * weight)


def rate_result(em, img_env, average=False):
    """
    Combine the environment rate with the free-space rate.

    Parameters
    ----------
    em : :obj:`Emitter`
    img_env : :obj:`srfid.green.GreenTensor`
        Imaginary part of the scattering Green tensor at the emitter.
    average : :obj:`bool`, optional

    Returns
    -------
    :obj:`RateResult`

    Raises
    ------
    ValueError
        If the total rate is negative, which a passive environment cannot
        produce.
    """
    result = RateResult(
        gamma_env=transition_rate(em, img_env, average),
        gamma_free=einstein_rate(em.omega_t, em.dipole),
    )
    if result.total < 0:
        raise ValueError(
            f"Total decay rate {result.total:.6g} 1/s is negative: the Green tensor "
            "does not describe a passive environment."
        )
    return result


def _check_coverage(values, grid, tol):
    """Raise CoverageError unless the integrand has decayed at the grid ends."""
    mags = np.abs(values)
    peak = np.max(mags)
    ends = [mags[-1]] if grid[0] == 0 else [mags[0], mags[-1]]
    if max(ends) > tol * peak:
        raise CoverageError(
            f"The integrand at the grid edges ({max(ends):.3g}) exceeds "
            f"{tol:g} of its peak ({peak:.3g}): extend the frequency grid "
            f"[{grid[0]:.6g}, {grid[-1]:.6g}] rad/s."
        )
    return peak


def frequency_shift(
    em, img_of_omega, grid, omega_kn=None, coverage_tol=1e-3, ctl=None
):
    """
    Environment-induced frequency shift of a transition.

    delta omega = -(mu0 / (hbar pi)) PV int_0^inf omega^2 d . Im G(omega) . d
                  / (omega + omega_kn) d omega

    Parameters
    ----------
    em : :obj:`Emitter`
        The emitter.
    img_of_omega : callable
        Maps an angular frequency to the imaginary part of the scattering Green
        tensor at the emitter position.
    grid : array-like
        Increasing angular frequencies, rad/s, spanning the support of Im G.
        The nodes become break points of the quadrature.
    omega_kn : :obj:`float`, optional
        Transition frequency of the (k, n) term. Defaults to ``em.omega_t``,
        which puts the pole at negative frequency. A negative value (upward
        term) places the pole on the integration path, where the principal
        value is taken with a Cauchy-weighted quadrature.
    coverage_tol : :obj:`float`, optional
        Largest admissible integrand at the grid ends relative to its peak.
    ctl : :obj:`srfid.green.QuadratureControl`, optional

    Returns
    -------
    :obj:`float`
        Shift in rad/s.

    Raises
    ------
    CoverageError
        If the integrand has not decayed at the ends of `grid`.
    QuadratureError
        If a quadrature misses its tolerance.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2 or np.any(np.diff(grid) <= 0) or grid[0] < 0:
        raise ValueError(
            "The frequency grid needs at least two strictly increasing, "
            "non-negative nodes."
        )
    omega_kn = em.omega_t if omega_kn is None else float(omega_kn)
    ctl = ctl or QuadratureControl()
    ctl = replace(ctl, limit=max(ctl.limit, 2 * grid.size + 10))

    def numerator(w):
        # omega^2 Im G vanishes in the static limit
        if w == 0:
            return 0.0
        return w**2 * float(em.dipole @ _real_tensor(img_of_omega(w)) @ em.dipole)

    values = np.array([numerator(w) for w in grid])
    if not np.any(values):
        return 0.0
    peak = _check_coverage(values, grid, coverage_tol)
    pole = -omega_kn
    scale = peak * (grid[-1] - grid[0]) / max(abs(grid[-1] + omega_kn), grid[-1])

    def regular(a, b):
        inner = grid[(grid > a) & (grid < b)]
        return checked_quad(
            lambda w: numerator(w) / (w + omega_kn),
            a,
            b,
            ctl,
            scale=scale,
            points=inner if inner.size else None,
            what="frequency-shift integral",
        )

    if not grid[0] < pole < grid[-1]:
        integral = regular(grid[0], grid[-1])
    else:
        # the cell around the pole, widened so the pole is never a node
        i = np.searchsorted(grid, pole)
        lo = grid[max(i - 1, 0)]
        hi = grid[min(i + 1, grid.size - 1)] if grid[i] == pole else grid[i]
        if lo == pole:
            lo = grid[max(i - 2, 0)]
        integral = checked_quad(
            numerator,
            lo,
            hi,
            ctl,
            scale=scale,
            what="principal-value cell",
            weight="cauchy",
            wvar=pole,
        )
        if lo > grid[0]:
            integral += regular(grid[0], lo)
        if hi < grid[-1]:
            integral += regular(hi, grid[-1])
        logger.debug(f"Principal value taken around the pole at {pole:.6g} rad/s")

    return float(-MU0 / (HBAR * np.pi) * integral)


def rot_avg_planar_coincident(d):
    """
    Azimuthal average of d . diag(1, 1, 2) . d, i.e. d_x^2 + d_y^2 + 2 d_z^2.

    Parameters
    ----------
    d : (3,) array-like
        Dipole in the surface frame.

    Returns
    -------
    :obj:`float`
    """
    d2 = np.abs(np.asarray(d)) ** 2
    return float(d2[0] + d2[1] + 2 * d2[2])


def rot_avg_planar_cross(d):
    """
    Cross-term weight of two independently rotated dipoles, d_z^2.

    Independent azimuthal averages remove the in-plane components; the
    normal component survives in both factors.
    """
    return float(np.abs(np.asarray(d)[2]) ** 2)


def rot_avg_sphere(A_r, A_phi, d, cross=False):
    """
    Azimuthal averages for a dipole above a sphere, z along e_r.

    Parameters
    ----------
    A_r : :obj:`float`
        rr weight of the tensor (coincident or two-point).
    A_phi : :obj:`float`
        Tangential weight of the coincident tensor.
    d : (3,) array-like
        Dipole in the local frame.
    cross : :obj:`bool`, optional
        Return the cross-term weight A_r d_z^2 instead of the coincidence
        weight A_phi (d_x^2 + d_y^2) + A_r d_z^2.

    Returns
    -------
    :obj:`float`
    """
    d2 = np.abs(np.asarray(d)) ** 2
    if cross:
        return float(A_r * d2[2])
    return float(A_phi * (d2[0] + d2[1]) + A_r * d2[2])
