"""Free-space dyadic Green function."""

import numpy as np

from .. import references
from ..constants import wavenumber
from ..due import due
from .tensor import GreenTensor

__all__ = ["sinc", "g0_full", "g0_im_full", "g0_im_twopoint", "g0_im_coincident"]


def sinc(u):
    """
    Unnormalised sinc, sin(u) / u.

    A four-term Taylor series replaces the quotient for |u| < 1e-4.
    """
    u = float(u)
    if abs(u) < 1e-4:
        u2 = u * u
        return 1 - u2 / 6 + u2 * u2 / 120 - u2 * u2 * u2 / 5040
    return np.sin(u) / u


def _separation(rho_vec):
    rho_vec = np.asarray(rho_vec, dtype=float)
    if rho_vec.shape != (3,):
        raise ValueError(f"Separation must be a 3-vector, got shape {rho_vec.shape}.")
    rho = np.linalg.norm(rho_vec)
    if rho == 0:
        raise ValueError(
            "Zero separation: use g0_im_coincident for the coincidence limit."
        )
    return rho, rho_vec / rho


def _im_channels(u, k0):
    """Identity and e_rho e_rho weights of Im G0, in 1/m."""
    if u < 1e-3:
        u2 = u * u
        return k0 / (4 * np.pi) * (2 / 3 - 2 * u2 / 15), k0 / (4 * np.pi) * u2 / 15
    s, c = np.sin(u), np.cos(u)
    pref = k0 / (4 * np.pi * u**3)
    return pref * (s * (u**2 - 1) + u * c), pref * (s * (3 - u**2) - 3 * u * c)


@due.dcite(references.BUHMANN_2012)
def g0_full(rho_vec, omega):
    """
    Free-space Green tensor between two points.

    Parameters
    ----------
    rho_vec : (3,) array-like
        Separation r - r', in m. Must be non-zero.
    omega : :obj:`float`
        Angular frequency, rad/s.

    Returns
    -------
    :obj:`GreenTensor`
        e^(iu) / (4 pi rho u^2) [(u^2 + iu - 1) I + (3 - 3iu - u^2) e e],
        u = omega rho / c, without the delta-function self term.

    Notes
    -----
    The imaginary part is taken from :func:`g0_im_full`, which switches to a
    series at small k0 rho where the closed form cancels.
    """
    if not omega > 0:
        raise ValueError(f"Angular frequency must be positive, got {omega}.")
    rho, e = _separation(rho_vec)
    k0 = wavenumber(omega)
    u = k0 * rho
    ee = np.outer(e, e)
    pref = 1 / (4 * np.pi * rho * u**2)
    re_i = pref * np.real(np.exp(1j * u) * (u**2 + 1j * u - 1))
    re_ee = pref * np.real(np.exp(1j * u) * (3 - 3j * u - u**2))
    im_i, im_ee = _im_channels(u, k0)
    entries = (re_i + 1j * im_i) * np.eye(3) + (re_ee + 1j * im_ee) * ee
    return GreenTensor(entries)


def g0_im_full(rho_vec, omega):
    """
    Exact imaginary part of the free-space Green tensor.

    Im G0 = (k0 / 4 pi u^3) {[sin u (u^2 - 1) + u cos u] I
            + [sin u (3 - u^2) - 3u cos u] e e}.

    Its trace equals the trace of the isotropic form used by
    :func:`g0_im_twopoint`; the individual components differ.
    """
    rho, e = _separation(rho_vec)
    k0 = wavenumber(omega)
    w_i, w_ee = _im_channels(k0 * rho, k0)
    return GreenTensor(w_i * np.eye(3) + w_ee * np.outer(e, e))


def g0_im_twopoint(rho, omega):
    """
    Isotropic imaginary free-space Green tensor, sin(k0 rho) / (6 pi rho) I.

    Parameters
    ----------
    rho : :obj:`float`
        Distance between the two points, m, >= 0.
    omega : :obj:`float`
        Angular frequency, rad/s.

    Returns
    -------
    :obj:`GreenTensor`
        Real-valued tensor; rho = 0 gives the coincidence value (omega / 6 pi c) I.
    """
    if rho < 0:
        raise ValueError(f"Distance must be non-negative, got {rho}.")
    k0 = wavenumber(omega)
    return GreenTensor(k0 / (6 * np.pi) * sinc(k0 * rho) * np.eye(3))


def g0_im_coincident(omega):
    """Imaginary free-space Green tensor at coincident points, (omega / 6 pi c) I."""
    if omega < 0:
        raise ValueError(f"Angular frequency must be non-negative, got {omega}.")
    return GreenTensor(wavenumber(omega) / (6 * np.pi) * np.eye(3))
