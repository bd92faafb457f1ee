"""
Scattering Green function above a dielectric half-space.

The emitters sit in vacuum at height z above the interface with a medium of
permittivity eps. Both emitters share the same height and are separated by x
along the x axis, with the z axis along the surface normal.
"""

from dataclasses import dataclass

import numpy as np
from loguru import logger
from scipy.integrate import quad
from scipy.special import j0, j1, jv

from .. import references
from ..constants import wavenumber
from ..dielectric import fresnel_rp_nonret
from ..due import due
from ..errors import QuadratureError
from .tensor import GreenTensor

__all__ = [
    "PlanarGeometry",
    "QuadratureControl",
    "fresnel_coefficients",
    "g1_planar_coincident_nonret",
    "g1_planar_zz_twopoint_nonret",
    "g1_planar_twopoint_nonret",
    "g1_planar_zz_twopoint_quadrature",
    "g1_planar_twopoint_quadrature",
    "g1_planar_coincident_quadrature",
    "nonretarded_parameter",
]

# k0 * length above which the near-field forms are flagged
NONRETARDED_LIMIT = 0.1


@dataclass(frozen=True)
class PlanarGeometry:
    """
    Two emitters at equal height above a planar surface.

    Attributes
    ----------
    z : :obj:`float`
        Height above the interface, m, > 0.
    x : :obj:`float`
        In-plane separation, m, >= 0.
    """

    z: float
    x: float = 0.0

    def __post_init__(self):
        _check_height(self.z)
        if self.x < 0:
            raise ValueError(f"Separation x must be non-negative, got {self.x}.")


@dataclass(frozen=True)
class QuadratureControl:
    """
    Settings of the adaptive quadrature over the in-plane wave number.

    Attributes
    ----------
    epsrel : :obj:`float`
        Relative tolerance handed to :func:`scipy.integrate.quad`.
    limit : :obj:`int`
        Maximum number of subintervals.
    kmax_factor : :obj:`float`
        Evanescent integrals are truncated at k = kmax_factor / z, where the
        damping exp(-2 k z) has dropped below exp(-2 kmax_factor).
    """

    epsrel: float = 1e-12
    limit: int = 500
    kmax_factor: float = 40.0

    def __post_init__(self):
        if not 0 < self.epsrel < 1:
            raise ValueError(f"epsrel must lie in (0, 1), got {self.epsrel}.")
        if self.limit < 1:
            raise ValueError(f"limit must be positive, got {self.limit}.")
        if not self.kmax_factor > 0:
            raise ValueError(f"kmax_factor must be positive, got {self.kmax_factor}.")


def _check_height(z):
    if not z > 0:
        raise ValueError(f"Height above the surface must be positive, got {z}.")


def _check_separation(x):
    if x < 0:
        raise ValueError(f"Separation x must be non-negative, got {x}.")


def nonretarded_parameter(omega, length):
    """
    Return k0 * length and warn when it exceeds the near-field limit 0.1.

    Parameters
    ----------
    omega : :obj:`float`
        Angular frequency, rad/s.
    length : :obj:`float`
        Largest distance entering a non-retarded formula, m.
    """
    value = wavenumber(omega) * length
    if value > NONRETARDED_LIMIT:
        logger.warning(
            f"k0 * {length:g} m = {value:.3g} exceeds {NONRETARDED_LIMIT}: "
            "the non-retarded Green function is outside its range of validity."
        )
    return value


def _kz(eps, k0, k_par):
    kz = np.sqrt(complex(eps * k0**2 - k_par**2))
    return -kz if kz.imag < 0 else kz


@due.dcite(references.BUHMANN_2012)
def fresnel_coefficients(k_par, omega, eps1, eps2):
    """
    Fresnel reflection coefficients of a planar interface.

    Parameters
    ----------
    k_par : :obj:`float`
        In-plane wave number, 1/m, >= 0.
    omega : :obj:`float`
        Angular frequency, rad/s, > 0.
    eps1, eps2 : :obj:`complex`
        Permittivity of the medium holding the emitters and of the substrate.

    Returns
    -------
    r_s, r_p : :obj:`complex`
        r_s = (k1 - k2) / (k1 + k2), r_p = (eps2 k1 - eps1 k2) / (eps2 k1 + eps1 k2),
        with k_j = sqrt(eps_j omega^2 / c^2 - k_par^2), Im k_j >= 0.
    """
    if not omega > 0:
        raise ValueError(f"Angular frequency must be positive, got {omega}.")
    if k_par < 0:
        raise ValueError(f"In-plane wave number must be non-negative, got {k_par}.")
    k0 = wavenumber(omega)
    k1, k2 = _kz(eps1, k0, k_par), _kz(eps2, k0, k_par)
    r_s = (k1 - k2) / (k1 + k2)
    r_p = (eps2 * k1 - eps1 * k2) / (eps2 * k1 + eps1 * k2)
    return complex(r_s), complex(r_p)


@due.dcite(references.BUHMANN_2012)
def g1_planar_coincident_nonret(z, omega, eps):
    """
    Non-retarded scattering Green tensor of a half-space at coincident points.

    Parameters
    ----------
    z : :obj:`float`
        Height above the surface, m.
    omega : :obj:`float`
        Angular frequency, rad/s.
    eps : :obj:`complex`
        Substrate permittivity.

    Returns
    -------
    :obj:`GreenTensor`
        (c^2 / (32 pi omega^2 z^3)) r_p diag(1, 1, 2), r_p = (eps - 1) / (eps + 1).
    """
    _check_height(z)
    k0 = wavenumber(omega)
    pref = fresnel_rp_nonret(eps) / (32 * np.pi * k0**2 * z**3)
    return GreenTensor.diagonal(pref, pref, 2 * pref)


@due.dcite(references.SUPERRADIANCE_FIDELITY)
def g1_planar_zz_twopoint_nonret(x, z, omega, eps):
    """
    Non-retarded zz component between two emitters at equal height.

    Returns -(1 / (4 pi k0^2 z^3)) r_p ((x/z)^2 - 8) / ((x/z)^2 + 4)^(5/2); its
    imaginary part changes sign at x = 2 sqrt(2) z.
    """
    _check_height(z)
    _check_separation(x)
    k0 = wavenumber(omega)
    u2 = (x / z) ** 2
    shape = (u2 - 8) / (u2 + 4) ** 2.5
    return complex(-fresnel_rp_nonret(eps) * shape / (4 * np.pi * k0**2 * z**3))


def g1_planar_twopoint_nonret(x, z, omega, eps):
    """
    Non-retarded scattering Green tensor G(r, r') for r - r' = (x, 0, 0).

    Parameters
    ----------
    x : :obj:`float`
        Separation along the x axis, m.
    z : :obj:`float`
        Common height above the surface, m.
    omega : :obj:`float`
    eps : :obj:`complex`

    Returns
    -------
    :obj:`GreenTensor`

    Notes
    -----
    With a = 2z, D = (a^2 + x^2)^(5/2) and C = r_p / (8 pi k0^2):
    xx = C (2a^2 - 4x^2) / D, yy = C (2a^2 + 2x^2) / D,
    zz = 2C (2a^2 - x^2) / D, xz = -zx = 6 C a x / D. The tensor is
    reciprocal, G(r, r') = G(r', r)^T, but not symmetric for x != 0.
    """
    _check_height(z)
    _check_separation(x)
    k0 = wavenumber(omega)
    c_ = fresnel_rp_nonret(eps) / (8 * np.pi * k0**2)
    a = 2 * z
    d = (a**2 + x**2) ** 2.5
    entries = np.zeros((3, 3), dtype=complex)
    entries[0, 0] = c_ * (2 * a**2 - 4 * x**2) / d
    entries[1, 1] = c_ * (2 * a**2 + 2 * x**2) / d
    entries[2, 2] = 2 * c_ * (2 * a**2 - x**2) / d
    entries[0, 2] = 6 * c_ * a * x / d
    entries[2, 0] = -entries[0, 2]
    return GreenTensor(entries)


def checked_quad(f, a, b, ctl, scale=1.0, points=None, what="integral", **kwargs):
    """
    Real adaptive quadrature that raises QuadratureError on failure.

    Extra keyword arguments (such as ``weight`` and ``wvar``) go to
    :func:`scipy.integrate.quad`.

    `scale` is the expected magnitude of the integral; the absolute tolerance
    is epsrel * scale so that integrals crossing zero still terminate.
    """
    epsabs = ctl.epsrel * scale
    value, abserr, info, *message = quad(
        f,
        a,
        b,
        epsrel=ctl.epsrel,
        epsabs=epsabs,
        limit=ctl.limit,
        points=points,
        full_output=1,
        **kwargs,
    )
    if message and abserr > 100 * max(epsabs, ctl.epsrel * abs(value)):
        raise QuadratureError(
            f"Quadrature of the {what} did not converge: {message[0]} "
            f"(estimated error {abserr:.3g}).",
            abserr=abserr,
        )
    logger.debug(
        f"{what}: {value:.6g} +- {abserr:.2g} with {info['last']} subintervals"
    )
    return value


def _quad_complex(f, a, b, ctl, scale=1.0, points=None, what="integral"):
    re = checked_quad(lambda t: f(t).real, a, b, ctl, scale, points, what)
    im = checked_quad(lambda t: f(t).imag, a, b, ctl, scale, points, what)
    return re + 1j * im


# Bessel kernels of the non-retarded two-point components, in t = k z.
_KERNELS = {
    "xx": lambda t, u: 0.5 * (j0(t * u) - jv(2, t * u)),
    "yy": lambda t, u: 0.5 * (j0(t * u) + jv(2, t * u)),
    "zz": lambda t, u: j0(t * u),
    "xz": lambda t, u: j1(t * u),
    "zx": lambda t, u: -j1(t * u),
}


def g1_planar_twopoint_quadrature(x, z, omega, eps, component="zz", ctl=None):
    """
    Non-retarded two-point component from its damped Bessel integral.

    G_ij = (r_p / (4 pi k0^2)) int_0^inf k^2 exp(-2kz) K_ij(kx) dk with
    K_zz = J0, K_xx = (J0 - J2) / 2, K_yy = (J0 + J2) / 2, K_xz = -K_zx = J1.
    The integral is taken in t = kz on [0, kmax_factor] by adaptive
    Gauss-Kronrod quadrature.

    Parameters
    ----------
    x, z : :obj:`float`
        Separation and common height, m.
    omega : :obj:`float`
    eps : :obj:`complex`
    component : {"zz", "xx", "yy", "xz", "zx"}
    ctl : :obj:`QuadratureControl`, optional

    Returns
    -------
    :obj:`complex`

    Raises
    ------
    QuadratureError
        If the quadrature misses its tolerance; carries the error estimate.
    """
    _check_height(z)
    _check_separation(x)
    if component not in _KERNELS:
        raise ValueError(f"Unknown component '{component}', use {sorted(_KERNELS)}.")
    ctl = ctl or QuadratureControl()
    r_p = fresnel_rp_nonret(eps)
    if r_p == 0:
        return 0j
    u = x / z
    kernel = _KERNELS[component]
    integral = checked_quad(
        lambda t: t**2 * np.exp(-2 * t) * kernel(t, u),
        0.0,
        ctl.kmax_factor,
        ctl,
        scale=0.25,
        what=f"{component} Bessel integral at x/z = {u:g}",
    )
    k0 = wavenumber(omega)
    return complex(r_p * integral / (4 * np.pi * k0**2 * z**3))


def g1_planar_zz_twopoint_quadrature(x, z, omega, eps, ctl=None):
    """
    Quadrature oracle for :func:`g1_planar_zz_twopoint_nonret`.

    Evaluates (1 / 4 pi)(r_p c^2 / omega^2) int_0^inf exp(-2kz) k^2 J0(kx) dk.
    """
    return g1_planar_twopoint_quadrature(x, z, omega, eps, "zz", ctl)


@due.dcite(references.BUHMANN_2012)
def g1_planar_coincident_quadrature(z, omega, eps2, eps1=1.0, ctl=None):
    """
    Retarded scattering Green tensor of a half-space at coincident points.

    G = (i / 8 pi) int_0^inf (k dk / k1) exp(2 i k1 z)
        [r_s diag(1, 1, 0) - (r_p / (eps1 k0^2)) diag(k1^2, k1^2, -2 k^2)],

    with the Fresnel coefficients of :func:`fresnel_coefficients`. The
    propagating part k < sqrt(eps1) k0 is integrated over the angle
    k = sqrt(eps1) k0 sin t, the evanescent part over kappa = -i k1 up to
    kmax_factor / z.

    Parameters
    ----------
    z : :obj:`float`
        Height above the surface, m.
    omega : :obj:`float`
    eps2 : :obj:`complex`
        Substrate permittivity.
    eps1 : :obj:`float`, optional
        Real permittivity of the upper medium. Default 1.
    ctl : :obj:`QuadratureControl`, optional

    Returns
    -------
    :obj:`GreenTensor`
    """
    _check_height(z)
    if not np.isreal(eps1) or not np.real(eps1) > 0:
        raise ValueError(f"The upper medium must be lossless, got eps1 = {eps1}.")
    ctl = ctl or QuadratureControl()
    eps1 = float(np.real(eps1))
    k0 = wavenumber(omega)
    n1k0 = np.sqrt(eps1) * k0

    def propagating(t, channel):
        k = n1k0 * np.sin(t)
        k1 = n1k0 * np.cos(t)
        r_s, r_p = fresnel_coefficients(k, omega, eps1, eps2)
        phase = np.exp(2j * k1 * z) * n1k0 * np.sin(t)
        if channel == "xx":
            return phase * (r_s - r_p * k1**2 / (eps1 * k0**2))
        return phase * r_p * 2 * k**2 / (eps1 * k0**2)

    def evanescent(kappa, channel):
        k = np.sqrt(n1k0**2 + kappa**2)
        r_s, r_p = fresnel_coefficients(k, omega, eps1, eps2)
        damping = -1j * np.exp(-2 * kappa * z)
        if channel == "xx":
            return damping * (r_s + r_p * kappa**2 / (eps1 * k0**2))
        return damping * r_p * 2 * k**2 / (eps1 * k0**2)

    kappa_max = ctl.kmax_factor / z
    knee = [min(4 * k0 * np.sqrt(abs(eps2)), kappa_max / 2)]
    # magnitudes of the two integrals for vanishing r_s and unit r_p
    prop_scale = 3 * n1k0
    evan_scale = 1 / (2 * eps1 * k0**2 * z**3) + 1 / (2 * z)
    values = {}
    for channel in ("xx", "zz"):
        prop = _quad_complex(
            lambda t: propagating(t, channel),
            0.0,
            np.pi / 2,
            ctl,
            scale=prop_scale,
            what=f"propagating {channel} integral",
        )
        evan = _quad_complex(
            lambda q: evanescent(q, channel),
            0.0,
            kappa_max,
            ctl,
            scale=evan_scale,
            points=knee,
            what=f"evanescent {channel} integral",
        )
        values[channel] = 1j / (8 * np.pi) * (prop + evan)
    return GreenTensor.diagonal(values["xx"], values["xx"], values["zz"])
