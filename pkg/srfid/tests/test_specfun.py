"""Tests for srfid.specfun."""

import numpy as np
import pytest
from scipy import special

from srfid import specfun
from srfid.errors import SpecialFunctionOverflowError


@pytest.mark.parametrize("z", [0.01, 0.7, 3.0, 25.0, 180.0])
def test_spherical_jn_orders_matches_scipy(z):
    orders = np.arange(61)
    expected = special.spherical_jn(orders, z)
    computed = specfun.spherical_jn_orders(60, z)
    nonzero = np.abs(expected) > 1e-280
    np.testing.assert_allclose(computed[nonzero].real, expected[nonzero], rtol=1e-10)
    assert np.all(computed.imag == 0)


@pytest.mark.parametrize("z", [0.5 + 0.2j, 2.0 + 1.0j, 12.0 + 0.5j])
def test_sph_bessel_j_complex_argument(z):
    for l in (0, 1, 5, 20):
        assert specfun.sph_bessel_j(l, z) == pytest.approx(
            special.spherical_jn(l, z), rel=1e-10
        )


def test_sph_bessel_j_at_zero():
    assert specfun.sph_bessel_j(0, 0.0) == 1
    assert specfun.sph_bessel_j(3, 0.0) == 0
    assert specfun.sph_bessel_j_prime(1, 0.0) == pytest.approx(1 / 3)


def test_sph_hankel1_is_j_plus_iy():
    for l in (0, 2, 11):
        for z in (0.3, 4.0, 40.0):
            h = specfun.sph_hankel1(l, z)
            assert h == pytest.approx(
                special.spherical_jn(l, z) + 1j * special.spherical_yn(l, z), rel=1e-12
            )
            assert specfun.sph_bessel_y(l, z) == pytest.approx(
                special.spherical_yn(l, z), rel=1e-12
            )


def test_wronskian_identity():
    """j_l h_l' - j_l' h_l = i / x^2 for l <= 50 on x in [0.1, 50]."""
    for x in np.geomspace(0.1, 50, 25):
        for l in range(0, 51, 5):
            w = specfun.sph_bessel_j(l, x) * specfun.sph_hankel1_prime(
                l, x
            ) - specfun.sph_bessel_j_prime(l, x) * specfun.sph_hankel1(l, x)
            assert abs(w * x**2 - 1j) <= 1e-10


def test_riccati_derivatives():
    """eta = j/z + j' and zeta = h/z + h'."""
    for l in (1, 4, 9):
        for z in (0.2, 3.3, 17.0):
            j, dj = special.spherical_jn(l, z), special.spherical_jn(l, z, derivative=True)
            y, dy = special.spherical_yn(l, z), special.spherical_yn(l, z, derivative=True)
            assert specfun.riccati_eta(l, z) == pytest.approx(j / z + dj, rel=1e-10)
            assert specfun.riccati_zeta(l, z) == pytest.approx(
                (j + 1j * y) / z + dj + 1j * dy, rel=1e-10
            )


def test_riccati_orders_matches_scalar():
    z = 2.5 + 0.1j
    jn = specfun.spherical_jn_orders(11, z)
    eta = specfun.riccati_orders(jn, z)
    assert eta.size == 11
    for l in (0, 3, 10):
        assert eta[l] == pytest.approx(specfun.riccati_eta(l, z), rel=1e-13)


def test_envelope_is_enforced():
    with pytest.raises(SpecialFunctionOverflowError):
        specfun.sph_bessel_j(specfun.L_MAX + 1, 1.0)
    with pytest.raises(SpecialFunctionOverflowError):
        specfun.sph_hankel1(3, 2 * specfun.Z_MAX)
    with pytest.raises(ValueError, match="pole"):
        specfun.sph_hankel1(1, 0.0)
    with pytest.raises(ValueError):
        specfun.riccati_zeta(1, 0.0)
    with pytest.raises(ValueError):
        specfun.sph_bessel_j(-1, 1.0)


def test_hankel_overflow_raises():
    """h_200 at a tiny argument leaves the double-precision range."""
    with pytest.raises(SpecialFunctionOverflowError):
        specfun.sph_hankel1(200, 1e-3)


def test_legendre_p_matches_scipy(rng):
    for x in rng.uniform(-1, 1, 20):
        p = specfun.legendre_p_orders(30, x)
        np.testing.assert_allclose(
            p, special.eval_legendre(np.arange(31), x), rtol=1e-12, atol=1e-14
        )


def test_legendre_p_endpoints():
    assert np.all(specfun.legendre_p_orders(100, 1.0) == 1.0)
    assert specfun.legendre_p(7, -1.0) == pytest.approx(-1.0)
    with pytest.raises(ValueError, match=r"\[-1, 1\]"):
        specfun.legendre_p(2, 1.5)


def test_legendre_derivatives_at_one():
    l = np.arange(21)
    dp = specfun.legendre_p_prime_orders(20, 1.0)
    d2p = specfun.legendre_p_second_orders(20, 1.0)
    np.testing.assert_allclose(dp, l * (l + 1) / 2)
    np.testing.assert_allclose(d2p, (l - 1) * l * (l + 1) * (l + 2) / 8)


def test_legendre_prime_finite_difference():
    x, h = 0.3, 1e-6
    dp = specfun.legendre_p_prime_orders(12, x)
    fd = (specfun.legendre_p_orders(12, x + h) - specfun.legendre_p_orders(12, x - h)) / (
        2 * h
    )
    np.testing.assert_allclose(dp, fd, rtol=1e-6, atol=1e-8)


def test_assoc_legendre_has_no_condon_shortley_phase():
    for l, m, x in [(1, 1, 0.3), (4, 2, -0.6), (7, 5, 0.9), (3, 0, 0.2)]:
        assert specfun.assoc_legendre(l, m, x) == pytest.approx(
            (-1) ** m * special.lpmv(m, l, x), rel=1e-12
        )
    with pytest.raises(ValueError, match="exceeds"):
        specfun.assoc_legendre(2, 3, 0.1)


def test_assoc_legendre_dtheta_finite_difference():
    h = 1e-6
    for l, m, theta in [(3, 0, 0.4), (5, 2, 1.1), (6, 6, 2.0)]:
        fd = (
            specfun.assoc_legendre(l, m, np.cos(theta + h))
            - specfun.assoc_legendre(l, m, np.cos(theta - h))
        ) / (2 * h)
        assert specfun.assoc_legendre_dtheta(l, m, theta) == pytest.approx(fd, rel=1e-6)


@pytest.mark.parametrize("derivative", [0, 1, 2])
def test_legendre_addition_theorem(rng, derivative):
    """Closed and summed sides agree for 1000 random angle triples, l <= 10."""
    theta1 = rng.uniform(0, np.pi, 1000)
    theta2 = rng.uniform(0, np.pi, 1000)
    dphi = rng.uniform(0, 2 * np.pi, 1000)
    degrees = rng.integers(0, 11, 1000)
    for l, t1, t2, p in zip(degrees, theta1, theta2, dphi):
        closed = specfun.legendre_addition(l, t1, t2, p, derivative)
        summed = specfun.legendre_addition_sum(l, t1, t2, p, derivative)
        assert abs(closed - summed) <= 1e-10 * max(1.0, abs(closed))


def test_legendre_addition_rejects_derivative_order():
    with pytest.raises(ValueError, match="derivative"):
        specfun.legendre_addition(2, 0.1, 0.2, 0.3, derivative=3)
    with pytest.raises(ValueError, match="derivative"):
        specfun.legendre_addition_sum(2, 0.1, 0.2, 0.3, derivative=3)
