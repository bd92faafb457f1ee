"""
Mie scattering Green function outside a dielectric sphere.

Positions are r = R + z from the sphere centre. Tensors are returned in the
spherical basis (e_r, e_theta, e_phi) of the source point; two-point values are
restricted to the rr component of two emitters at the same radius separated
by the polar angle theta_sep.

Two families of multipole sums are provided. The retarded sums use the full
Mie coefficients and spherical Hankel functions and are limited by the
special-function envelope (order <= 200). The non-retarded sums need no
special functions and may run to much higher orders, which is required when
R / z is large.
"""

from dataclasses import dataclass

import numpy as np
from loguru import logger

from .. import references
from ..constants import wavenumber
from ..due import due
from ..errors import PoleError, SeriesConvergenceError, SpecialFunctionOverflowError
from ..specfun import (
    L_MAX,
    riccati_orders,
    spherical_hn_orders,
    spherical_jn_orders,
)
from .planar import g1_planar_coincident_nonret
from .tensor import SPHERICAL, GreenTensor

__all__ = [
    "SphereGeometry",
    "MieSeriesControl",
    "SeriesResult",
    "mie_rs",
    "mie_rp",
    "mie_rp_nonret",
    "g_sphere_coincident",
    "g_sphere_coincident_nonret",
    "g_sphere_rr_twopoint_nonret",
    "g_sphere_rr_twopoint_retarded",
    "g_sphere_plane_limit",
]

# terms in a row that must fall below the tolerance
_CONSECUTIVE = 3
# |l eps + l + 1| below this multiple of (2l + 1) counts as near-pole
_NEAR_POLE = 1e-6
_FIRST_BLOCK = 64
_MAX_BLOCK = 65536


@dataclass(frozen=True)
class SphereGeometry:
    """
    Two emitters at height z above a sphere of radius R.

    Attributes
    ----------
    R : :obj:`float`
        Sphere radius, m, > 0.
    z : :obj:`float`
        Height of both emitters above the surface, m, > 0.
    theta_sep : :obj:`float`
        Polar angle between the emitters seen from the centre, rad, in [0, pi].
    """

    R: float
    z: float
    theta_sep: float = 0.0

    def __post_init__(self):
        if not self.R > 0:
            raise ValueError(f"Sphere radius must be positive, got {self.R}.")
        if not self.z > 0:
            raise ValueError(f"Height above the sphere must be positive, got {self.z}.")
        if not 0 <= self.theta_sep <= np.pi:
            raise ValueError(
                f"Separation angle must lie in [0, pi], got {self.theta_sep}."
            )

    @classmethod
    def from_arc(cls, R, z, arc):
        """Build the geometry from the arc length s = theta_sep (R + z)."""
        if arc < 0:
            raise ValueError(f"Arc length must be non-negative, got {arc}.")
        return cls(R, z, arc / (R + z))

    @property
    def r(self):
        """Radial position of the emitters, R + z."""
        return self.R + self.z

    @property
    def arc(self):
        return self.theta_sep * self.r

    @property
    def chord(self):
        """Straight-line distance between the emitters."""
        return 2 * self.r * np.sin(self.theta_sep / 2)


@dataclass(frozen=True)
class MieSeriesControl:
    """
    Truncation control of the multipole sums.

    Attributes
    ----------
    tol : :obj:`float`
        A sum stops once |term_l| / |partial sum| < tol for three consecutive l.
    l_max_cap : :obj:`int`
        Highest order of sums evaluating spherical Bessel functions, <= 200.
    quasistatic_l_max : :obj:`int`
        Highest order of the non-retarded sums.
    """

    tol: float = 1e-10
    l_max_cap: int = 200
    quasistatic_l_max: int = 1_000_000

    def __post_init__(self):
        if not 0 < self.tol < 1:
            raise ValueError(f"tol must lie in (0, 1), got {self.tol}.")
        if not 1 <= self.l_max_cap <= L_MAX:
            raise ValueError(
                f"l_max_cap must lie in [1, {L_MAX}], got {self.l_max_cap}."
            )
        if self.quasistatic_l_max < 1:
            raise ValueError(
                f"quasistatic_l_max must be positive, got {self.quasistatic_l_max}."
            )


@dataclass(frozen=True)
class SeriesResult:
    """
    A truncated multipole sum with its diagnostics.

    Attributes
    ----------
    value : :obj:`GreenTensor` or :obj:`complex`
    l_max : :obj:`int`
        Last order included.
    tail : :obj:`float`
        Estimated magnitude of the neglected remainder.
    """

    value: object
    l_max: int
    tail: float


def _check_sphere(r, omega, R):
    if not R > 0:
        raise ValueError(f"Sphere radius must be positive, got {R}.")
    if not r > R:
        raise ValueError(f"Position r = {r} must lie outside the sphere (R = {R}).")
    if not omega > 0:
        raise ValueError(f"Angular frequency must be positive, got {omega}.")


class _Truncation:
    """Running state of the consecutive-small-terms stopping rule."""

    def __init__(self, n_channels, tol):
        self.total = np.zeros(n_channels, dtype=complex)
        self.run = 0
        self.tol = tol

    def feed(self, terms):
        """
        Add a block of terms (n, channels) and return the index where the sum
        converged within the block, or None. On convergence `total` holds the
        sum up to and including that index.
        """
        partial = self.total + np.cumsum(terms, axis=0)
        term_mag = np.max(np.abs(terms), axis=1)
        sum_mag = np.max(np.abs(partial), axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(
                sum_mag > 0, term_mag / sum_mag, np.where(term_mag == 0, 0.0, np.inf)
            )
        small = ratio < self.tol
        idx = np.arange(small.size)
        last_big = np.maximum.accumulate(np.where(small, -1, idx))
        run = np.where(last_big < 0, self.run + idx + 1, idx - last_big)
        hit = np.flatnonzero(run >= _CONSECUTIVE)
        if hit.size:
            self.total = partial[hit[0]]
            return int(hit[0])
        self.total = partial[-1]
        self.run = int(run[-1])
        return None


def _tail(last, ratio):
    ratio = min(abs(ratio), 0.999999)
    return float(last * ratio / (1 - ratio))


def _quasistatic_tail(weights, eps, q, l_max):
    """
    Geometric bound on sum_{l > l_max} |weights(l) alpha_l q^(2l + 1)|.

    Consecutive envelope terms differ by q^2 times the weight growth times
    |alpha_(l+1) / alpha_l|. The weight growth falls with l and the alpha ratio
    stays below 1 once |eps + 1| (2l + 1) > 2, so the ratio at l_max, with its
    alpha part floored at 1, bounds every later one. |P_l| <= 1 covers the
    two-point series.
    """
    l = np.array([l_max, l_max + 1])
    w = np.abs(weights(l))
    with np.errstate(divide="ignore"):
        alpha = np.abs((eps - 1) / (l * eps + l + 1))
    if alpha[0] == 0:
        return 0.0
    with np.errstate(under="ignore"):
        last = np.max(w[0]) * alpha[0] * np.exp((2 * l_max + 1) * np.log(q))
    growth = np.max(w[1] / w[0])
    return _tail(last, q**2 * growth * max(1.0, alpha[1] / alpha[0]))


def _check_poles(eps, l):
    denom = l * eps + l + 1
    if np.any(denom == 0):
        bad = int(l[np.flatnonzero(denom == 0)[0]])
        raise PoleError(
            f"eps = {eps} sits on the order-{bad} multipole pole eps = -(l+1)/l."
        )
    near = np.abs(denom) < _NEAR_POLE * (2 * l + 1)
    if np.any(near):
        bad = int(l[np.flatnonzero(near)[0]])
        logger.warning(
            f"eps = {eps} is within {_NEAR_POLE:g} of the order-{bad} multipole "
            f"pole eps = {-(bad + 1) / bad:.6g}; the sphere response is resonant."
        )
    return denom


class _LegendreStream:
    """P_l(x) for l = 1, 2, ... delivered in consecutive blocks."""

    def __init__(self, x):
        self.x = float(x)
        self.prev, self.cur, self.l = 1.0, self.x, 1

    def take(self, n):
        if self.x == 1.0:
            return np.ones(n)
        out = np.empty(n)
        x, prev, cur, l = self.x, self.prev, self.cur, self.l
        for i in range(n):
            out[i] = cur
            prev, cur = cur, ((2 * l + 1) * x * cur - l * prev) / (l + 1)
            l += 1
        self.prev, self.cur, self.l = prev, cur, l
        return out


def _quasistatic_sum(weights, eps, q, ctl, cos_theta=None, what="series"):
    """
    Sum_l>=1 weights(l) alpha_l q^(2l + 1) [P_l(cos_theta)] in growing blocks.

    alpha_l = (eps - 1) / (l eps + l + 1). `weights` maps an order array to a
    (n, channels) array. Returns (sum, l_max, tail).
    """
    eps = complex(eps)
    log_q = np.log(q)
    legendre = None if cos_theta is None else _LegendreStream(cos_theta)
    state = None
    l_start, block = 1, _FIRST_BLOCK
    cap = ctl.quasistatic_l_max
    while l_start <= cap:
        l = np.arange(l_start, min(l_start + block, cap + 1))
        alpha = (eps - 1) / _check_poles(eps, l)
        with np.errstate(under="ignore"):
            envelope = np.exp((2 * l + 1) * log_q)
        terms = weights(l) * (alpha * envelope)[:, np.newaxis]
        if legendre is not None:
            terms = terms * legendre.take(l.size)[:, np.newaxis]
        if state is None:
            state = _Truncation(terms.shape[1], ctl.tol)
        hit = state.feed(terms)
        if hit is not None:
            l_max = int(l[hit])
            tail = _quasistatic_tail(weights, eps, q, l_max)
            logger.debug(f"{what} converged at l = {l_max}, tail {tail:.3g}")
            return state.total, l_max, tail
        l_start += l.size
        block = min(2 * block, _MAX_BLOCK)
    tail = _quasistatic_tail(weights, eps, q, cap)
    raise SeriesConvergenceError(
        f"{what} did not reach tol = {ctl.tol:g} within {cap} orders "
        f"(R/r = {q:.6g}, estimated tail {tail:.3g}).",
        tail=tail,
        l_max=cap,
    )


def _mie_orders(lmax, x, eps):
    """Mie coefficients r_s, r_p for orders 0 ... lmax at size parameter x."""
    m = np.sqrt(complex(eps))
    kx = m * x
    jx = spherical_jn_orders(lmax + 1, x)
    jk = spherical_jn_orders(lmax + 1, kx)
    hx = spherical_hn_orders(lmax + 1, x)
    with np.errstate(all="ignore"):
        eta_x = riccati_orders(jx, x)
        eta_k = riccati_orders(jk, kx)
        zeta_x = riccati_orders(hx, x)
        jx, jk, hx = jx[:-1], jk[:-1], hx[:-1]
        r_s = -(m * eta_k * jx - eta_x * jk) / (m * eta_k * hx - zeta_x * jk)
        r_p = -(m * eta_x * jk - eta_k * jx) / (m * zeta_x * jk - eta_k * hx)
    return r_s, r_p


def _mie_single(l, omega, R, eps, which):
    if int(l) != l or l < 1:
        raise ValueError(f"Mie coefficients need an integer order l >= 1, got {l}.")
    if not R > 0:
        raise ValueError(f"Sphere radius must be positive, got {R}.")
    if not omega > 0:
        raise ValueError(f"Angular frequency must be positive, got {omega}.")
    if l > L_MAX:
        raise SpecialFunctionOverflowError(
            f"Order {l} exceeds the supported maximum order {L_MAX}."
        )
    coefficient = _mie_orders(int(l), wavenumber(omega) * R, eps)[which][int(l)]
    if not np.isfinite(coefficient):
        raise SpecialFunctionOverflowError(
            f"Mie coefficient of order {l} at k0 R = {wavenumber(omega) * R:g} "
            "is not representable in double precision."
        )
    return complex(coefficient)


@due.dcite(references.BOHREN_HUFFMAN_1983)
def mie_rs(l, omega, R, eps):
    """
    Reflection coefficient of s-polarised (TE) multipoles of order `l`.

    r_s = -[k eta_l(kR) j_l(k0R) - k0 eta_l(k0R) j_l(kR)]
          / [k eta_l(kR) h_l(k0R) - k0 zeta_l(k0R) j_l(kR)],  k = k0 sqrt(eps).

    Parameters
    ----------
    l : :obj:`int`
        Multipole order, >= 1.
    omega : :obj:`float`
        Angular frequency, rad/s.
    R : :obj:`float`
        Sphere radius, m.
    eps : :obj:`complex`
        Sphere permittivity.

    Returns
    -------
    :obj:`complex`
    """
    return _mie_single(l, omega, R, eps, 0)


@due.dcite(references.BOHREN_HUFFMAN_1983)
def mie_rp(l, omega, R, eps):
    """
    Reflection coefficient of p-polarised (TM) multipoles of order `l`.

    r_p = -[k eta_l(k0R) j_l(kR) - k0 eta_l(kR) j_l(k0R)]
          / [k zeta_l(k0R) j_l(kR) - k0 eta_l(kR) h_l(k0R)].
    For k0 R -> 0 and l = 1 it tends to i (2/3) (eps - 1)/(eps + 2) (k0 R)^3.
    """
    return _mie_single(l, omega, R, eps, 1)


def _double_factorial(n):
    return float(np.prod(np.arange(n, 0, -2, dtype=float))) if n > 0 else 1.0


def mie_rp_nonret(l, omega, R, eps):
    """
    Small-sphere limit of :func:`mie_rp`.

    Returns i (l+1) / ((2l+1)!! (2l-1)!!) (eps-1)/(l eps + l + 1) (k0 R)^(2l+1).
    """
    if int(l) != l or l < 1:
        raise ValueError(f"Mie coefficients need an integer order l >= 1, got {l}.")
    l = int(l)
    eps = complex(eps)
    denom = _check_poles(eps, np.array([l]))[0]
    x = wavenumber(omega) * R
    return complex(
        1j
        * (l + 1)
        / (_double_factorial(2 * l + 1) * _double_factorial(2 * l - 1))
        * (eps - 1)
        / denom
        * x ** (2 * l + 1)
    )


def _retarded_sum(terms, ctl, what):
    """Truncate a precomputed (l_max_cap, channels) array of retarded terms."""
    finite = np.all(np.isfinite(terms), axis=1)
    state = _Truncation(terms.shape[1], ctl.tol)
    bad = np.flatnonzero(~finite)
    usable = terms if not bad.size else terms[: bad[0]]
    hit = state.feed(usable) if usable.size else None
    if hit is not None:
        mags = np.max(np.abs(usable), axis=1)
        ratio = mags[hit] / mags[hit - 1] if hit > 0 and mags[hit - 1] > 0 else 0.5
        tail = _tail(mags[hit], ratio)
        logger.debug(f"{what} converged at l = {hit + 1}, tail {tail:.3g}")
        return state.total, hit + 1, tail
    if bad.size:
        raise SpecialFunctionOverflowError(
            f"{what}: term of order {bad[0] + 1} is not representable in double "
            "precision before the series converged."
        )
    mags = np.max(np.abs(terms), axis=1)
    tail = _tail(mags[-1], mags[-1] / mags[-2] if mags[-2] > 0 else 0.5)
    raise SeriesConvergenceError(
        f"{what} did not reach tol = {ctl.tol:g} within l_max_cap = {ctl.l_max_cap} "
        f"(estimated tail {tail:.3g}).",
        tail=tail,
        l_max=ctl.l_max_cap,
    )


def _retarded_ingredients(r, omega, R, eps, ctl):
    lmax = ctl.l_max_cap
    k0 = wavenumber(omega)
    r_s, r_p = _mie_orders(lmax, k0 * R, eps)
    y = k0 * r
    hy = spherical_hn_orders(lmax + 1, y)
    with np.errstate(all="ignore"):
        zeta_y = riccati_orders(hy, y)
    l = np.arange(1, lmax + 1)
    return k0, y, l, r_s[1:], r_p[1:], hy[1:-1], zeta_y[1:]


def _underflow_guard(r_p, eps):
    # a vanishing coefficient of a contrasting sphere means lost range, not zero
    if complex(eps) != 1:
        return np.where(r_p == 0, np.nan, r_p)
    return r_p


def _result(value, l_max, tail, return_diagnostics):
    return SeriesResult(value, l_max, tail) if return_diagnostics else value


@due.dcite(references.LI_1994)
@due.dcite(references.WISCOMBE_1980)
def g_sphere_coincident(r, omega, R, eps, ctl=None, return_diagnostics=False):
    """
    Retarded Mie scattering Green tensor at coincident points.

    G = (i k0 / 8 pi) sum_l (2l+1) {r_s h_l^2 (e_t e_t + e_p e_p)
        + r_p [2 l (l+1) h_l^2 / (k0 r)^2 e_r e_r + zeta_l^2 (e_t e_t + e_p e_p)]},
    with h_l = h_l(k0 r) and zeta_l = zeta_l(k0 r).

    Parameters
    ----------
    r : :obj:`float`
        Distance of the emitter from the sphere centre, m, > R.
    omega : :obj:`float`
        Angular frequency, rad/s.
    R : :obj:`float`
        Sphere radius, m.
    eps : :obj:`complex`
        Sphere permittivity.
    ctl : :obj:`MieSeriesControl`, optional
    return_diagnostics : :obj:`bool`, optional
        Return a :obj:`SeriesResult` instead of the bare tensor.

    Returns
    -------
    :obj:`GreenTensor` or :obj:`SeriesResult`
        Diagonal tensor in the spherical basis with theta-theta = phi-phi.

    Raises
    ------
    SeriesConvergenceError
        If the sum has not converged at ``ctl.l_max_cap``.
    SpecialFunctionOverflowError
        If a term leaves the double-precision range first.
    """
    _check_sphere(r, omega, R)
    ctl = ctl or MieSeriesControl()
    if complex(eps) == 1:
        return _result(GreenTensor.zeros(SPHERICAL), 0, 0.0, return_diagnostics)
    k0, y, l, r_s, r_p, h, zeta = _retarded_ingredients(r, omega, R, eps, ctl)
    r_p = _underflow_guard(r_p, eps)
    with np.errstate(all="ignore"):
        rr = (2 * l + 1) * 2 * l * (l + 1) * ((r_p * h) * h) / y**2
        tt = (2 * l + 1) * ((r_s * h) * h + (r_p * zeta) * zeta)
    total, l_max, tail = _retarded_sum(
        np.column_stack([rr, tt]), ctl, "retarded sphere coincidence series"
    )
    pref = 1j * k0 / (8 * np.pi)
    value = GreenTensor.diagonal(
        pref * total[0], pref * total[1], pref * total[1], SPHERICAL
    )
    return _result(value, l_max, abs(pref) * tail, return_diagnostics)


@due.dcite(references.BUHMANN_2004)
def g_sphere_coincident_nonret(r, omega, R, eps, ctl=None, return_diagnostics=False):
    """
    Non-retarded Mie scattering Green tensor at coincident points.

    G = (c^2 / (8 pi omega^2 r^3)) sum_l l (l+1) (eps-1)/(l eps + l + 1) (R/r)^(2l+1)
        [2 (l+1) e_r e_r + l (e_t e_t + e_p e_p)].

    Parameters
    ----------
    r, omega, R, eps, ctl, return_diagnostics
        As for :func:`g_sphere_coincident`; the sum runs up to
        ``ctl.quasistatic_l_max``.

    Returns
    -------
    :obj:`GreenTensor` or :obj:`SeriesResult`
    """
    _check_sphere(r, omega, R)
    ctl = ctl or MieSeriesControl()
    q = R / r
    total, l_max, tail = _quasistatic_sum(
        lambda l: np.column_stack([2.0 * l * (l + 1) ** 2, l * l * (l + 1.0)]),
        eps,
        q,
        ctl,
        what="non-retarded sphere coincidence series",
    )
    pref = 1 / (8 * np.pi * wavenumber(omega) ** 2 * r**3)
    value = GreenTensor.diagonal(
        pref * total[0], pref * total[1], pref * total[1], SPHERICAL
    )
    return _result(value, l_max, pref * tail, return_diagnostics)


@due.dcite(references.SUPERRADIANCE_FIDELITY)
def g_sphere_rr_twopoint_nonret(geom, omega, eps, ctl=None, return_diagnostics=False):
    """
    Non-retarded rr component between two emitters at equal radius.

    G_rr = (1 / (4 pi k0^2 r^3)) sum_l l (l+1)^2 (eps-1)/(l eps + l + 1)
           (R/r)^(2l+1) P_l(cos theta_sep).

    Parameters
    ----------
    geom : :obj:`SphereGeometry`
    omega : :obj:`float`
    eps : :obj:`complex`
    ctl : :obj:`MieSeriesControl`, optional
    return_diagnostics : :obj:`bool`, optional

    Returns
    -------
    :obj:`complex` or :obj:`SeriesResult`
        At theta_sep = 0 this equals the rr entry of
        :func:`g_sphere_coincident_nonret`.
    """
    r = geom.r
    _check_sphere(r, omega, geom.R)
    ctl = ctl or MieSeriesControl()
    total, l_max, tail = _quasistatic_sum(
        lambda l: (2.0 * l * (l + 1) ** 2)[:, np.newaxis],
        eps,
        geom.R / r,
        ctl,
        cos_theta=np.cos(geom.theta_sep),
        what="non-retarded sphere two-point series",
    )
    pref = 1 / (8 * np.pi * wavenumber(omega) ** 2 * r**3)
    return _result(complex(pref * total[0]), l_max, pref * tail, return_diagnostics)


@due.dcite(references.LI_1994)
def g_sphere_rr_twopoint_retarded(geom, omega, eps, ctl=None, return_diagnostics=False):
    """
    Retarded rr component between two emitters at equal radius.

    G_rr = (i / (4 pi k0 r^2)) sum_l (2l+1) l (l+1) r_p h_l(k0 r)^2 P_l(cos theta_sep),
    with the full Mie coefficient r_p of :func:`mie_rp`. Its non-retarded limit
    is :func:`g_sphere_rr_twopoint_nonret`.

    Parameters
    ----------
    geom : :obj:`SphereGeometry`
    omega : :obj:`float`
    eps : :obj:`complex`
    ctl : :obj:`MieSeriesControl`, optional
    return_diagnostics : :obj:`bool`, optional

    Returns
    -------
    :obj:`complex` or :obj:`SeriesResult`
    """
    r = geom.r
    _check_sphere(r, omega, geom.R)
    ctl = ctl or MieSeriesControl()
    if complex(eps) == 1:
        return _result(0j, 0, 0.0, return_diagnostics)
    k0, y, l, _, r_p, h, _ = _retarded_ingredients(r, omega, geom.R, eps, ctl)
    r_p = _underflow_guard(r_p, eps)
    p = _LegendreStream(np.cos(geom.theta_sep)).take(l.size)
    with np.errstate(all="ignore"):
        terms = (2 * l + 1) * l * (l + 1) * ((r_p * h) * h) * p
    total, l_max, tail = _retarded_sum(
        terms[:, np.newaxis], ctl, "retarded sphere two-point series"
    )
    pref = 1j / (4 * np.pi * k0 * r**2)
    return _result(
        complex(pref * total[0]), l_max, abs(pref) * tail, return_diagnostics
    )


def g_sphere_plane_limit(z, omega, eps):
    """
    Large-radius limit of the non-retarded sphere tensor.

    The planar form (c^2 / (32 pi omega^2 z^3)) (eps-1)/(eps+1) diag(1, 1, 2) with
    the surface normal mapped onto e_r.
    """
    planar = g1_planar_coincident_nonret(z, omega, eps).entries
    return GreenTensor.diagonal(planar[2, 2], planar[0, 0], planar[1, 1], SPHERICAL)
