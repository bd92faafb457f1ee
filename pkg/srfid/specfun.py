"""
Special functions for the multipole sums of the sphere Green function.

Spherical Bessel functions of complex argument are generated by three-term
recurrences: j_l upward where the order does not exceed the argument and by
Miller's downward recurrence (on ratios) above it; y_l and h_l^(1) always
upward. Legendre functions are generated by upward recurrences as well, and the
associated functions carry no Condon-Shortley phase.
"""

import numpy as np
from loguru import logger
from scipy.special import gammaln

from . import references
from .due import due
from .errors import SpecialFunctionOverflowError

__all__ = [
    "L_MAX",
    "Z_MAX",
    "spherical_jn_orders",
    "spherical_yn_orders",
    "spherical_hn_orders",
    "sph_bessel_j",
    "sph_bessel_y",
    "sph_hankel1",
    "sph_bessel_j_prime",
    "sph_hankel1_prime",
    "riccati_eta",
    "riccati_zeta",
    "riccati_orders",
    "legendre_p",
    "legendre_p_orders",
    "legendre_p_prime_orders",
    "legendre_p_second_orders",
    "assoc_legendre",
    "assoc_legendre_dtheta",
    "legendre_addition",
    "legendre_addition_sum",
]

L_MAX = 200
Z_MAX = 1e4

# Orders added on top of the requested one before starting Miller's recurrence.
_MILLER_EXTRA = 40


def _check_order(l, name="l"):
    if int(l) != l or l < 0:
        raise ValueError(f"Order {name} must be a non-negative integer, got {l}.")
    return int(l)


def _check_public_order(l):
    l = _check_order(l)
    if l > L_MAX:
        raise SpecialFunctionOverflowError(
            f"Order {l} exceeds the supported maximum order {L_MAX}."
        )
    return l


def _check_envelope(lmax, z):
    # one order above L_MAX is reachable through derivatives of order L_MAX
    if lmax > L_MAX + 1:
        raise SpecialFunctionOverflowError(
            f"Order {lmax} exceeds the supported maximum order {L_MAX}."
        )
    if abs(z) > Z_MAX:
        raise SpecialFunctionOverflowError(
            f"Argument |z| = {abs(z):g} exceeds the supported maximum {Z_MAX:g}."
        )


def _finite_or_raise(value, what):
    if not np.all(np.isfinite(value)):
        raise SpecialFunctionOverflowError(
            f"{what} is not representable in double precision."
        )
    return value


def _upward(f0, f1, lmax, z):
    out = np.empty(lmax + 1, dtype=complex)
    out[0] = f0
    if lmax >= 1:
        out[1] = f1
    with np.errstate(over="ignore", invalid="ignore"):
        for n in range(1, lmax):
            out[n + 1] = (2 * n + 1) / z * out[n] - out[n - 1]
    return out


@due.dcite(references.GAUTSCHI_1967)
def spherical_jn_orders(lmax, z):
    """
    Spherical Bessel functions of the first kind for all orders up to `lmax`.

    Parameters
    ----------
    lmax : :obj:`int`
        Highest order, 0 <= lmax <= :data:`L_MAX`.
    z : :obj:`complex`
        Argument, |z| <= :data:`Z_MAX`.

    Returns
    -------
    jn : (lmax + 1,) :obj:`numpy.ndarray`
        Complex values j_0(z) ... j_lmax(z).

    Notes
    -----
    Orders up to floor(|z|) come from the upward recurrence started at j_0 and
    j_1. Higher orders use the ratios r_n = j_n / j_(n-1) obtained by the
    downward recurrence r_n = z / (2n + 1 - z r_(n+1)), started far above
    `lmax` with r = 0, and are anchored on the larger of the two last upward
    values. Values below the double-precision range underflow to zero.
    """
    lmax = _check_order(lmax, "lmax")
    z = complex(z)
    _check_envelope(lmax, z)

    if z == 0:
        out = np.zeros(lmax + 1, dtype=complex)
        out[0] = 1.0
        return out

    az = abs(z)
    l_up = min(lmax, int(np.floor(az)))
    j0 = np.sin(z) / z
    j1 = np.sin(z) / z**2 - np.cos(z) / z if l_up >= 1 else 0.0j
    out = _upward(j0, j1, l_up, z)
    if l_up == lmax:
        return _finite_or_raise(out, f"j_l({z})")

    n_start = lmax + _MILLER_EXTRA + int(az)
    ratios = np.zeros(lmax + 2, dtype=complex)
    r_next = 0.0j
    n_stop = max(l_up, 1)
    for n in range(n_start, n_stop - 1, -1):
        r_next = z / ((2 * n + 1) - z * r_next)
        if n <= lmax + 1:
            ratios[n] = r_next

    anchor = l_up
    if l_up >= 1 and abs(out[l_up - 1]) > abs(out[l_up]):
        anchor = l_up - 1

    full = np.empty(lmax + 1, dtype=complex)
    full[: l_up + 1] = out
    value = out[anchor]
    with np.errstate(under="ignore"):
        for n in range(anchor + 1, lmax + 1):
            value = value * ratios[n]
            if n > l_up:
                full[n] = value
    logger.debug(f"Miller recurrence for j_l({z}) started at order {n_start}")
    return _finite_or_raise(full, f"j_l({z})")


def spherical_yn_orders(lmax, z):
    """Spherical Bessel functions of the second kind y_0(z) ... y_lmax(z)."""
    lmax = _check_order(lmax, "lmax")
    z = complex(z)
    _check_envelope(lmax, z)
    if z == 0:
        raise ValueError("y_l(z) has a pole at z = 0.")
    y0 = -np.cos(z) / z
    y1 = -np.cos(z) / z**2 - np.sin(z) / z
    return _upward(y0, y1, lmax, z)


def spherical_hn_orders(lmax, z):
    """
    Spherical Hankel functions of the first kind h_0(z) ... h_lmax(z).

    The upward recurrence is started at the closed forms
    h_0 = -i e^(iz) / z and h_1 = -(z + i) e^(iz) / z**2. Orders that overflow
    are returned as non-finite values, so callers summing a series can stop
    before reaching them.
    """
    lmax = _check_order(lmax, "lmax")
    z = complex(z)
    _check_envelope(lmax, z)
    if z == 0:
        raise ValueError("h_l(z) has a pole at z = 0.")
    phase = np.exp(1j * z)
    h0 = -1j * phase / z
    h1 = -(z + 1j) * phase / z**2
    return _upward(h0, h1, lmax, z)


def sph_bessel_j(l, z):
    """
    Spherical Bessel function of the first kind j_l(z).

    Parameters
    ----------
    l : :obj:`int`
        Order, 0 <= l <= :data:`L_MAX`.
    z : :obj:`complex`
        Argument.

    Returns
    -------
    :obj:`complex`

    Raises
    ------
    SpecialFunctionOverflowError
        Outside the supported envelope or when the value is not representable.
    """
    l = _check_public_order(l)
    return complex(spherical_jn_orders(l, z)[l])


def sph_bessel_y(l, z):
    """Spherical Bessel function of the second kind y_l(z)."""
    l = _check_public_order(l)
    value = spherical_yn_orders(l, z)[l]
    return complex(_finite_or_raise(value, f"y_{l}({z})"))


def sph_hankel1(l, z):
    """
    Spherical Hankel function of the first kind h_l^(1)(z) = j_l(z) + i y_l(z).

    Raises
    ------
    ValueError
        If z = 0, where h_l has a pole.
    SpecialFunctionOverflowError
        Outside the supported envelope or on overflow.
    """
    l = _check_public_order(l)
    value = spherical_hn_orders(l, z)[l]
    return complex(_finite_or_raise(value, f"h_{l}({z})"))


def _derivative(f_l, f_lp1, l, z):
    # d f_l / dz = l / z f_l - f_(l+1)
    return l / z * f_l - f_lp1


def sph_bessel_j_prime(l, z):
    """Derivative of j_l with respect to its argument."""
    l = _check_public_order(l)
    z = complex(z)
    if z == 0:
        return 1.0 / 3.0 if l == 1 else 0.0j
    jn = spherical_jn_orders(l + 1, z)
    return complex(_derivative(jn[l], jn[l + 1], l, z))


def sph_hankel1_prime(l, z):
    """Derivative of h_l^(1) with respect to its argument."""
    l = _check_public_order(l)
    z = complex(z)
    hn = spherical_hn_orders(l + 1, z)
    return complex(_finite_or_raise(_derivative(hn[l], hn[l + 1], l, z), "h_l'"))


def _riccati(f_l, f_lp1, l, z):
    # (1/z) d[z f_l]/dz = (l + 1) / z f_l - f_(l+1)
    with np.errstate(over="ignore", invalid="ignore"):
        return (l + 1) / z * f_l - f_lp1


def riccati_eta(l, z):
    """
    Riccati-Bessel derivative eta_l(z) = (1/z) d[z j_l(z)]/dz.

    Raises
    ------
    ValueError
        If z = 0.
    """
    l = _check_public_order(l)
    z = complex(z)
    if z == 0:
        raise ValueError("eta_l(z) is evaluated at z = 0.")
    jn = spherical_jn_orders(l + 1, z)
    return complex(_finite_or_raise(_riccati(jn[l], jn[l + 1], l, z), "eta_l"))


def riccati_zeta(l, z):
    """
    Riccati-Hankel derivative zeta_l(z) = (1/z) d[z h_l^(1)(z)]/dz.

    Raises
    ------
    ValueError
        If z = 0.
    """
    l = _check_public_order(l)
    z = complex(z)
    if z == 0:
        raise ValueError("zeta_l(z) is evaluated at z = 0.")
    hn = spherical_hn_orders(l + 1, z)
    return complex(_finite_or_raise(_riccati(hn[l], hn[l + 1], l, z), "zeta_l"))


def riccati_orders(fn, z):
    """
    Riccati derivatives for every order of a precomputed Bessel array.

    Parameters
    ----------
    fn : (L + 2,) :obj:`numpy.ndarray`
        j_l(z) or h_l(z) for l = 0 ... L + 1.
    z : :obj:`complex`

    Returns
    -------
    (L + 1,) :obj:`numpy.ndarray`
        eta_l(z) or zeta_l(z) for l = 0 ... L.
    """
    orders = np.arange(fn.size - 1)
    return _riccati(fn[:-1], fn[1:], orders, complex(z))


def _check_unit_interval(x):
    if abs(x) > 1:
        raise ValueError(f"Legendre argument must lie in [-1, 1], got {x}.")
    return float(x)


def legendre_p_orders(lmax, x):
    """
    Legendre polynomials P_0(x) ... P_lmax(x).

    Uses (l + 1) P_(l+1) = (2l + 1) x P_l - l P_(l-1), which is stable
    upward on [-1, 1] and returns exactly 1 at x = 1.
    """
    lmax = _check_order(lmax, "lmax")
    x = _check_unit_interval(x)
    out = np.empty(lmax + 1)
    p_prev, p_cur = 1.0, x
    out[0] = 1.0
    if lmax >= 1:
        out[1] = x
    for l in range(1, lmax):
        p_prev, p_cur = p_cur, ((2 * l + 1) * x * p_cur - l * p_prev) / (l + 1)
        out[l + 1] = p_cur
    return out


def legendre_p(l, x):
    """
    Legendre polynomial P_l(x).

    Parameters
    ----------
    l : :obj:`int`
        Non-negative order.
    x : :obj:`float`
        Argument in [-1, 1].

    Returns
    -------
    :obj:`float`

    Raises
    ------
    ValueError
        If |x| > 1.
    """
    l = _check_order(l)
    return float(legendre_p_orders(l, x)[l])


def legendre_p_prime_orders(lmax, x, p=None):
    """First derivatives P_l'(x) via P'_(l+1) = P'_(l-1) + (2l + 1) P_l."""
    if p is None:
        p = legendre_p_orders(lmax, x)
    out = np.zeros(lmax + 1)
    if lmax >= 1:
        out[1] = 1.0
    for l in range(1, lmax):
        out[l + 1] = out[l - 1] + (2 * l + 1) * p[l]
    return out


def legendre_p_second_orders(lmax, x, dp=None):
    """Second derivatives P_l''(x) via P''_(l+1) = P''_(l-1) + (2l + 1) P'_l."""
    if dp is None:
        dp = legendre_p_prime_orders(lmax, x)
    out = np.zeros(lmax + 1)
    for l in range(1, lmax):
        out[l + 1] = out[l - 1] + (2 * l + 1) * dp[l]
    return out


def _assoc_legendre(l, m, x, s):
    # P_l^m without Condon-Shortley phase; s = sqrt(1 - x**2) >= 0.
    if m > l:
        return 0.0
    pmm = 1.0
    for i in range(1, m + 1):
        pmm *= (2 * i - 1) * s
    if l == m:
        return pmm
    pmm1 = x * (2 * m + 1) * pmm
    for ll in range(m + 2, l + 1):
        pmm, pmm1 = pmm1, (x * (2 * ll - 1) * pmm1 - (ll + m - 1) * pmm) / (ll - m)
    return pmm1


def assoc_legendre(l, m, x):
    """
    Associated Legendre function P_l^m(x) without the Condon-Shortley phase.

    Parameters
    ----------
    l : :obj:`int`
        Degree, l >= 0.
    m : :obj:`int`
        Order, 0 <= m <= l.
    x : :obj:`float`
        Argument in [-1, 1].

    Returns
    -------
    :obj:`float`
        (1 - x**2)**(m/2) d^m P_l(x) / dx^m.

    Raises
    ------
    ValueError
        If m > l or |x| > 1.
    """
    l = _check_order(l)
    m = _check_order(m, "m")
    if m > l:
        raise ValueError(f"Order m = {m} exceeds degree l = {l}.")
    x = _check_unit_interval(x)
    value = _assoc_legendre(l, m, x, np.sqrt(max(0.0, 1.0 - x * x)))
    return float(_finite_or_raise(value, f"P_{l}^{m}({x})"))


def assoc_legendre_dtheta(l, m, theta):
    """
    Derivative d P_l^m(cos theta) / d theta.

    Parameters
    ----------
    l, m : :obj:`int`
        Degree and order, 0 <= m <= l.
    theta : :obj:`float`
        Polar angle in [0, pi].

    Returns
    -------
    :obj:`float`

    Notes
    -----
    For m = 0 the derivative is -P_l^1; for m >= 1 it is
    [(l + m)(l - m + 1) P_l^(m-1) - P_l^(m+1)] / 2, both in the phase-free
    convention.
    """
    l = _check_order(l)
    m = _check_order(m, "m")
    if m > l:
        raise ValueError(f"Order m = {m} exceeds degree l = {l}.")
    if not 0 <= theta <= np.pi:
        raise ValueError(f"Polar angle must lie in [0, pi], got {theta}.")
    x, s = np.cos(theta), np.sin(theta)
    if m == 0:
        return -_assoc_legendre(l, 1, x, s)
    return 0.5 * (
        (l + m) * (l - m + 1) * _assoc_legendre(l, m - 1, x, s)
        - _assoc_legendre(l, m + 1, x, s)
    )


def legendre_addition(l, theta1, theta2, dphi, derivative=0):
    """
    Closed side of the Legendre addition theorem and its dphi-derivatives.

    Derivative forms are -d/d(dphi) and -d^2/d(dphi)^2 of P_l(cos gamma).

    Parameters
    ----------
    l : :obj:`int`
        Degree.
    theta1, theta2 : :obj:`float`
        Polar angles of the two directions.
    dphi : :obj:`float`
        Azimuthal angle between the two directions.
    derivative : {0, 1, 2}
        0 returns P_l(cos gamma); 1 returns P_l'(cos gamma) s sin(dphi);
        2 returns -P_l''(cos gamma) s**2 sin(dphi)**2 + P_l'(cos gamma) s cos(dphi),
        with s = sin(theta1) sin(theta2) and cos gamma the cosine of the angle
        between the directions.

    Returns
    -------
    :obj:`float`
    """
    l = _check_order(l)
    s = np.sin(theta1) * np.sin(theta2)
    cos_gamma = np.clip(np.cos(theta1) * np.cos(theta2) + s * np.cos(dphi), -1, 1)
    p = legendre_p_orders(max(l, 1), cos_gamma)
    if derivative == 0:
        return float(p[l])
    dp = legendre_p_prime_orders(max(l, 1), cos_gamma, p)
    if derivative == 1:
        return float(dp[l] * s * np.sin(dphi))
    if derivative == 2:
        d2p = legendre_p_second_orders(max(l, 1), cos_gamma, dp)
        return float(-d2p[l] * (s * np.sin(dphi)) ** 2 + dp[l] * s * np.cos(dphi))
    raise ValueError(f"derivative must be 0, 1 or 2, got {derivative}.")


def legendre_addition_sum(l, theta1, theta2, dphi, derivative=0):
    """
    Sum side of the Legendre addition theorem.

    Evaluates sum_m (2 - delta_m0) (l-m)!/(l+m)! P_l^m(cos theta1)
    P_l^m(cos theta2) w_m(dphi), with w_m = cos(m dphi), m sin(m dphi) or
    m**2 cos(m dphi) for `derivative` 0, 1 and 2. Matches
    :func:`legendre_addition` term by term in the phase-free convention.
    """
    l = _check_order(l)
    if derivative not in (0, 1, 2):
        raise ValueError(f"derivative must be 0, 1 or 2, got {derivative}.")
    x1, s1 = np.cos(theta1), np.sin(theta1)
    x2, s2 = np.cos(theta2), np.sin(theta2)
    total = 0.0
    for m in range(l + 1):
        norm = (1.0 if m == 0 else 2.0) * np.exp(
            gammaln(l - m + 1) - gammaln(l + m + 1)
        )
        product = norm * _assoc_legendre(l, m, x1, s1) * _assoc_legendre(l, m, x2, s2)
        if derivative == 0:
            total += product * np.cos(m * dphi)
        elif derivative == 1:
            total += product * m * np.sin(m * dphi)
        else:
            total += product * m**2 * np.cos(m * dphi)
    return float(total)
