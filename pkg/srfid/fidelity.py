"""
Superradiance fidelity of two emitters.

sigma = 1 + Im G_zz(r_A, r_B) / Im G_zz(r_A, r_A) compares the mode density
shared by two emitters with the one each sees alone. It equals 2 when the
emitters are indistinguishable to the field and tends to 1 when they decay
independently. Both the numerator and the denominator contain the free-space
part and the scattering part of the Green function, projected on the surface
normal.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np
import pandas as pd
from loguru import logger

from . import references
from .constants import wavenumber
from .dielectric import (
    DielectricTable,
    LorentzModel,
    fresnel_rp_nonret,
    permittivity_at,
)
from .due import due
from .errors import DegenerateDensityError
from .green.free import g0_im_twopoint, sinc
from .green.planar import g1_planar_zz_twopoint_nonret
from .green.sphere import g_sphere_rr_twopoint_nonret, g_sphere_rr_twopoint_retarded

__all__ = [
    "FidelityCurve",
    "sigma_from_green",
    "sigma_free",
    "sigma_plane",
    "sigma_plane_small_lambda",
    "sigma_sphere",
    "scan",
    "thread_count",
]

THREADS_ENV = "SRFID_THREADS"


def _eps_at(eps, omega):
    if isinstance(eps, (DielectricTable, LorentzModel)):
        return permittivity_at(eps, omega)
    return complex(eps)


def sigma_from_green(cross, coincident, cross_reverse=None, rtol=1e-9):
    """
    Assemble the fidelity from imaginary Green-function projections.

    Parameters
    ----------
    cross : :obj:`float`
        Im G_zz(r_A, r_B), free-space plus scattering part.
    coincident : :obj:`float`
        Im G_zz(r_A, r_A), free-space plus scattering part.
    cross_reverse : :obj:`float`, optional
        Im G_zz(r_B, r_A). When given, it must agree with `cross`.
    rtol : :obj:`float`, optional
        Relative tolerance of the ordering check.

    Returns
    -------
    :obj:`float`
        1 + cross / coincident.

    Raises
    ------
    DegenerateDensityError
        If the coincident density vanishes or is not finite.
    ValueError
        If the two orderings of the cross term disagree.
    """
    if not np.isfinite(coincident) or coincident == 0:
        raise DegenerateDensityError(
            f"Local mode density {coincident!r} cannot normalise the fidelity."
        )
    if cross_reverse is not None and not np.isclose(
        cross, cross_reverse, rtol=rtol, atol=0
    ):
        raise ValueError(
            f"Cross densities differ between orderings: {cross!r} vs {cross_reverse!r}."
        )
    return float(1 + cross / coincident)


@due.dcite(references.SUPERRADIANCE_FIDELITY)
def sigma_free(x, omega):
    """
    Fidelity of two emitters in free space, 1 + sin(k0 x) / (k0 x).

    Parameters
    ----------
    x : :obj:`float`
        Separation, m, >= 0.
    omega : :obj:`float`
        Angular frequency, rad/s.

    Returns
    -------
    :obj:`float`
    """
    if x < 0:
        raise ValueError(f"Separation must be non-negative, got {x}.")
    return 1 + sinc(wavenumber(omega) * x)


def _free_zz(distance, omega):
    return g0_im_twopoint(distance, omega).component("zz")


@due.dcite(references.SUPERRADIANCE_FIDELITY)
def sigma_plane(x, z, omega, eps):
    """
    Fidelity of two emitters at height z above a planar surface.

    Parameters
    ----------
    x : :obj:`float`
        In-plane separation, m, >= 0.
    z : :obj:`float`
        Height of both emitters, m, > 0.
    omega : :obj:`float`
        Angular frequency, rad/s.
    eps : :obj:`complex` or :obj:`DielectricTable` or :obj:`LorentzModel`
        Substrate permittivity, or a medium evaluated at `omega`.

    Returns
    -------
    :obj:`float`

    Notes
    -----
    The scattering part uses the non-retarded zz component, which is valid
    while k0 z << 1. The denominator is the same expression at x = 0, so
    sigma(0) = 2 exactly.
    """
    eps = _eps_at(eps, omega)
    cross = _free_zz(x, omega) + g1_planar_zz_twopoint_nonret(x, z, omega, eps).imag
    coincident = (
        _free_zz(0.0, omega) + g1_planar_zz_twopoint_nonret(0.0, z, omega, eps).imag
    )
    return sigma_from_green(cross, coincident)


def sigma_plane_small_lambda(x, z, omega, eps):
    """
    Leading-order fidelity above a plane for z << x.

    1 + (sigma_free - 1) 8 k0^3 z^3 / (3 Im r_p), neglecting the free-space
    density against the surface density and the surface cross term against
    the free-space one.

    Raises
    ------
    DegenerateDensityError
        If Im r_p = 0.
    """
    if not 0 < z < x:
        raise ValueError(f"The expansion needs 0 < z < x, got z={z}, x={x}.")
    eps = _eps_at(eps, omega)
    im_rp = fresnel_rp_nonret(eps).imag
    if im_rp == 0:
        raise DegenerateDensityError("Im r_p = 0: the surface adds no mode density.")
    k0z = wavenumber(omega) * z
    return 1 + (sigma_free(x, omega) - 1) * 8 * k0z**3 / (3 * im_rp)


@due.dcite(references.SUPERRADIANCE_FIDELITY)
def sigma_sphere(geom, omega, eps, ctl=None, retarded=False):
    """
    Fidelity of two emitters at equal height above a sphere.

    Parameters
    ----------
    geom : :obj:`srfid.green.SphereGeometry`
        Radius, height and angular separation.
    omega : :obj:`float`
        Angular frequency, rad/s.
    eps : :obj:`complex` or :obj:`DielectricTable` or :obj:`LorentzModel`
        Sphere permittivity, or a medium evaluated at `omega`.
    ctl : :obj:`srfid.green.MieSeriesControl`, optional
    retarded : :obj:`bool`, optional
        Use the retarded multipole sum for the scattering part.

    Returns
    -------
    :obj:`float`

    Notes
    -----
    The free-space part depends on the straight-line (chord) distance between
    the emitters; curves are usually reported against the arc length.
    """
    eps = _eps_at(eps, omega)
    rr = g_sphere_rr_twopoint_retarded if retarded else g_sphere_rr_twopoint_nonret
    cross = _free_zz(geom.chord, omega) + rr(geom, omega, eps, ctl).imag
    coincident = (
        _free_zz(0.0, omega) + rr(replace(geom, theta_sep=0.0), omega, eps, ctl).imag
    )
    return sigma_from_green(cross, coincident)


@dataclass(frozen=True, eq=False)
class FidelityCurve:
    """
    Fidelity sampled along one parameter.

    Attributes
    ----------
    parameter : :obj:`str`
        Name of the swept parameter.
    unit : :obj:`str`
        Unit of the swept parameter.
    values : :obj:`numpy.ndarray`
        Parameter values with a finite fidelity, strictly increasing.
    sigma : :obj:`numpy.ndarray`
        Fidelity at each value.
    failures : :obj:`tuple` of (:obj:`float`, :obj:`str`)
        Parameter values whose evaluation raised, with the error message.
    metadata : :obj:`dict`
        Geometry, frequency and medium description.
    """

    parameter: str
    unit: str
    values: np.ndarray
    sigma: np.ndarray
    failures: tuple = ()
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        sigma = np.asarray(self.sigma, dtype=float)
        if values.shape != sigma.shape or values.ndim != 1:
            raise ValueError("values and sigma must be 1D arrays of equal length.")
        if np.any(np.diff(values) <= 0):
            raise ValueError("Parameter values must be strictly increasing.")
        if not np.all(np.isfinite(sigma)):
            raise ValueError("Every fidelity sample must be finite.")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "sigma", sigma)

    def __len__(self):
        return self.values.size

    def to_dataframe(self):
        """
        Return the samples as a two-column :obj:`pandas.DataFrame`.

        The metadata travels along in ``DataFrame.attrs``.
        """
        frame = pd.DataFrame({"param": self.values, "sigma": self.sigma})
        frame.attrs.update(self.metadata)
        return frame

    def plot(self, ax=None, **kwargs):
        """
        Draw the curve with matplotlib.

        Parameters
        ----------
        ax : :obj:`matplotlib.axes.Axes`, optional
            Axes to draw on; a new figure is created otherwise.
        **kwargs
            Passed to :meth:`matplotlib.axes.Axes.plot`.

        Returns
        -------
        :obj:`matplotlib.axes.Axes`
        """
        import matplotlib.pyplot as plt

        if ax is None:
            _, ax = plt.subplots()
        ax.plot(self.values, self.sigma, **kwargs)
        ax.set_xlabel(f"{self.parameter} ({self.unit})")
        ax.set_ylabel("sigma")
        return ax


def thread_count(threads=None):
    """
    Number of worker threads for a scan.

    An explicit `threads` wins over the SRFID_THREADS environment variable; the
    default is min(8, cpu count).
    """
    if threads is None:
        env = os.environ.get(THREADS_ENV)
        if env is None:
            return min(8, os.cpu_count() or 1)
        try:
            threads = int(env)
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be an integer, got '{env}'.")
    if threads < 1:
        raise ValueError(f"Thread count must be at least 1, got {threads}.")
    return threads


def _evaluate(generator, value):
    try:
        return float(generator(value)), None
    except ValueError as err:
        return np.nan, f"{type(err).__name__}: {err}"


def scan(generator, sweep, parameter="x", unit="m", metadata=None, threads=None):
    """
    Evaluate a fidelity generator over a parameter grid.

    Parameters
    ----------
    generator : callable
        Maps one parameter value to sigma, e.g.
        ``lambda x: sigma_plane(x, z, omega, eps)``.
    sweep : array-like
        Strictly increasing parameter values.
    parameter, unit : :obj:`str`, optional
        Name and unit of the swept parameter.
    metadata : :obj:`dict`, optional
        Stored on the curve.
    threads : :obj:`int`, optional
        Worker threads; see :func:`thread_count`.

    Returns
    -------
    :obj:`FidelityCurve`
        Samples in grid order. Points whose evaluation raised a ValueError
        (including every srfid error) are recorded in ``failures``.
    """
    sweep = np.atleast_1d(np.asarray(sweep, dtype=float))
    if sweep.size == 0:
        raise ValueError("Cannot scan an empty parameter grid.")
    if sweep.ndim != 1 or np.any(np.diff(sweep) <= 0):
        raise ValueError("The parameter grid must be strictly increasing.")

    workers = min(thread_count(threads), sweep.size)
    logger.debug(f"Scanning {sweep.size} values of {parameter} on {workers} thread(s)")
    if workers == 1:
        results = [_evaluate(generator, v) for v in sweep]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda v: _evaluate(generator, v), sweep))

    sigma = np.array([s for s, _ in results])
    failures = []
    for value, (s, message) in zip(sweep, results):
        if message is None and not np.isfinite(s):
            message = f"non-finite fidelity {s}"
        if message is not None:
            logger.warning(f"{parameter} = {value:.6g} {unit}: {message}")
            failures.append((float(value), message))
    ok = np.isfinite(sigma)
    return FidelityCurve(
        parameter, unit, sweep[ok], sigma[ok], tuple(failures), dict(metadata or {})
    )
