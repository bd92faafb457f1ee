"""Tests for srfid.green.sphere."""

import numpy as np
import pytest
from scipy.special import eval_legendre

from srfid.constants import wavenumber
from srfid.errors import PoleError, SeriesConvergenceError, SpecialFunctionOverflowError
from srfid.green import sphere
from srfid.green.tensor import SPHERICAL

EPS_LOSSY = 2.0 + 1.0j


def _direct_rr(geom, omega, eps, lmax):
    """Non-retarded two-point rr summed with scipy's Legendre polynomials."""
    l = np.arange(1, lmax + 1)
    q = geom.R / geom.r
    alpha = (eps - 1) / (l * eps + l + 1)
    terms = 2 * l * (l + 1) ** 2 * alpha * q ** (2 * l + 1)
    terms = terms * eval_legendre(l, np.cos(geom.theta_sep))
    return terms.sum() / (8 * np.pi * wavenumber(omega) ** 2 * geom.r**3)


def test_sphere_geometry():
    geom = sphere.SphereGeometry.from_arc(10e-9, 1e-9, 2.2e-9)
    assert geom.r == pytest.approx(11e-9)
    assert geom.theta_sep == pytest.approx(0.2)
    assert geom.arc == pytest.approx(2.2e-9)
    assert geom.chord == pytest.approx(2 * 11e-9 * np.sin(0.1))
    for bad in [(0.0, 1e-9), (1e-9, 0.0), (1e-9, 1e-9, -0.1), (1e-9, 1e-9, 4.0)]:
        with pytest.raises(ValueError):
            sphere.SphereGeometry(*bad)
    with pytest.raises(ValueError, match="non-negative"):
        sphere.SphereGeometry.from_arc(1e-9, 1e-9, -1e-9)


def test_series_control_validation():
    with pytest.raises(ValueError, match="tol"):
        sphere.MieSeriesControl(tol=0)
    with pytest.raises(ValueError, match="l_max_cap"):
        sphere.MieSeriesControl(l_max_cap=201)
    with pytest.raises(ValueError, match="quasistatic_l_max"):
        sphere.MieSeriesControl(quasistatic_l_max=0)


def test_mie_rp_small_sphere_limit(omega):
    R = 1e-3 / wavenumber(omega)
    expected = 1j * 2 / 3 * (EPS_LOSSY - 1) / (EPS_LOSSY + 2) * 1e-9
    assert sphere.mie_rp(1, omega, R, EPS_LOSSY) == pytest.approx(expected, rel=1e-4)
    assert sphere.mie_rp_nonret(1, omega, R, EPS_LOSSY) == pytest.approx(
        expected, rel=1e-12
    )


def test_mie_coefficients_errors(omega):
    assert sphere.mie_rs(2, omega, 5e-9, 1.0) == 0
    assert sphere.mie_rp(2, omega, 5e-9, 1.0) == 0
    with pytest.raises(ValueError, match="order"):
        sphere.mie_rp(0, omega, 5e-9, EPS_LOSSY)
    with pytest.raises(ValueError, match="radius"):
        sphere.mie_rs(1, omega, -1.0, EPS_LOSSY)
    with pytest.raises(SpecialFunctionOverflowError):
        sphere.mie_rp(201, omega, 5e-9, EPS_LOSSY)
    with pytest.raises(PoleError):
        sphere.mie_rp_nonret(1, omega, 5e-9, -2.0)


def test_twopoint_at_zero_angle_matches_coincident(omega):
    geom = sphere.SphereGeometry(10e-9, 1e-9)
    coincident = sphere.g_sphere_coincident_nonret(geom.r, omega, geom.R, EPS_LOSSY)
    twopoint = sphere.g_sphere_rr_twopoint_nonret(geom, omega, EPS_LOSSY)
    assert twopoint == pytest.approx(coincident.component("rr"), rel=1e-12)


def test_retarded_twopoint_at_zero_angle_matches_coincident(omega):
    geom = sphere.SphereGeometry(1e-9, 1e-9)
    coincident = sphere.g_sphere_coincident(geom.r, omega, geom.R, EPS_LOSSY)
    twopoint = sphere.g_sphere_rr_twopoint_retarded(geom, omega, EPS_LOSSY)
    assert twopoint == pytest.approx(coincident.component("rr"), rel=1e-8)


@pytest.mark.parametrize("theta", [0.3, 0.7, np.pi])
def test_twopoint_matches_direct_legendre_sum(omega, theta):
    geom = sphere.SphereGeometry(2e-9, 1e-9, theta)
    expected = _direct_rr(geom, omega, EPS_LOSSY, 150)
    result = sphere.g_sphere_rr_twopoint_nonret(geom, omega, EPS_LOSSY)
    assert result == pytest.approx(expected, rel=1e-9)


def test_coincident_structure(omega):
    g = sphere.g_sphere_coincident_nonret(3e-9, omega, 2e-9, EPS_LOSSY)
    assert g.basis == SPHERICAL
    assert g.component("tt") == g.component("pp")
    assert g.component("rt") == 0
    assert g.imag.component("rr") > 0


def test_retarded_matches_non_retarded_in_near_field(omega):
    r, R = 2e-9, 1e-9
    assert wavenumber(omega) * r < 0.05
    ret = sphere.g_sphere_coincident(r, omega, R, EPS_LOSSY)
    nonret = sphere.g_sphere_coincident_nonret(r, omega, R, EPS_LOSSY)
    for comp in ("rr", "tt"):
        assert ret.component(comp) == pytest.approx(nonret.component(comp), rel=1e-2)
    geom = sphere.SphereGeometry(R, r - R, 0.5)
    assert sphere.g_sphere_rr_twopoint_retarded(
        geom, omega, EPS_LOSSY
    ) == pytest.approx(sphere.g_sphere_rr_twopoint_nonret(geom, omega, EPS_LOSSY), rel=1e-2)


def test_transparent_sphere_has_no_response(omega):
    geom = sphere.SphereGeometry(2e-9, 1e-9, 0.4)
    assert np.all(sphere.g_sphere_coincident(geom.r, omega, geom.R, 1.0).entries == 0)
    assert sphere.g_sphere_rr_twopoint_retarded(geom, omega, 1.0) == 0
    assert sphere.g_sphere_rr_twopoint_nonret(geom, omega, 1.0) == 0


def test_large_sphere_approaches_plane(omega, z_bind, argon_model):
    """The sphere tends to the planar result as R / z grows, and monotonically."""
    eps = argon_model(omega)
    plane = sphere.g_sphere_plane_limit(z_bind, omega, eps).component("rr")
    errors = []
    for ratio in (1e2, 1e3, 1e4):
        R = ratio * z_bind
        rr = sphere.g_sphere_coincident_nonret(R + z_bind, omega, R, eps).component("rr")
        errors.append(abs(rr - plane) / abs(plane))
    assert errors[-1] < 1e-2
    assert errors[0] > errors[1] > errors[2]


def test_plane_limit_structure(omega, z_bind):
    g = sphere.g_sphere_plane_limit(z_bind, omega, EPS_LOSSY)
    assert g.basis == SPHERICAL
    assert g.component("rr") == pytest.approx(2 * g.component("tt"))
    assert g.component("pp") == g.component("tt")


def test_diagnostics(omega):
    geom = sphere.SphereGeometry(1e-9, 1e-9, 0.3)
    ctl = sphere.MieSeriesControl(tol=1e-12)
    res = sphere.g_sphere_rr_twopoint_nonret(geom, omega, EPS_LOSSY, ctl, True)
    assert isinstance(res, sphere.SeriesResult)
    assert res.l_max > 10
    assert 0 <= res.tail < 1e-8 * abs(res.value)
    res = sphere.g_sphere_coincident(geom.r, omega, geom.R, EPS_LOSSY, ctl, True)
    assert 10 < res.l_max <= ctl.l_max_cap
    assert res.tail < 1e-8 * abs(res.value.component("rr"))


def test_series_convergence_error(omega):
    ctl = sphere.MieSeriesControl(l_max_cap=5, quasistatic_l_max=5)
    with pytest.raises(SeriesConvergenceError) as err:
        sphere.g_sphere_coincident_nonret(3e-9, omega, 2e-9, EPS_LOSSY, ctl)
    assert err.value.l_max == 5
    assert err.value.tail > 0
    with pytest.raises(SeriesConvergenceError):
        sphere.g_sphere_coincident(3e-9, omega, 2e-9, EPS_LOSSY, ctl)


def test_retarded_series_overflow(omega):
    with pytest.raises(SpecialFunctionOverflowError):
        sphere.g_sphere_coincident(1.01e-9, omega, 1e-9, EPS_LOSSY)


def test_pole_and_near_pole(omega, caplog):
    geom = sphere.SphereGeometry(2e-9, 1e-9)
    with pytest.raises(PoleError):
        sphere.g_sphere_rr_twopoint_nonret(geom, omega, -2.0)
    sphere.g_sphere_rr_twopoint_nonret(geom, omega, -2.0 + 1e-8j)
    assert "pole" in caplog.text


def test_position_checks(omega):
    with pytest.raises(ValueError, match="outside"):
        sphere.g_sphere_coincident_nonret(1e-9, omega, 2e-9, EPS_LOSSY)
    with pytest.raises(ValueError, match="frequency"):
        sphere.g_sphere_coincident(3e-9, -1.0, 2e-9, EPS_LOSSY)


@pytest.mark.parametrize("q", [0.5, 0.9, 0.99])
def test_tail_bounds_the_remainder(omega, q):
    r = 1e-9
    res = sphere.g_sphere_coincident_nonret(r, omega, q * r, EPS_LOSSY, None, True)
    l = np.arange(res.l_max + 1, 40 * res.l_max)
    envelope = (EPS_LOSSY - 1) / (l * EPS_LOSSY + l + 1) * q ** (2 * l + 1)
    pref = 1 / (8 * np.pi * wavenumber(omega) ** 2 * r**3)
    for weight in (2 * l * (l + 1) ** 2, l * l * (l + 1)):
        assert abs(pref * np.sum(weight * envelope)) <= res.tail
    # same bound for the oscillating two-point series
    geom = sphere.SphereGeometry(q * r, r - q * r, 0.4)
    res = sphere.g_sphere_rr_twopoint_nonret(geom, omega, EPS_LOSSY, None, True)
    l = np.arange(res.l_max + 1, 40 * res.l_max)
    q = geom.R / geom.r
    terms = (2 * l * (l + 1) ** 2 * (EPS_LOSSY - 1) / (l * EPS_LOSSY + l + 1)
             * q ** (2 * l + 1) * eval_legendre(l, np.cos(geom.theta_sep)))
    pref = 1 / (8 * np.pi * wavenumber(omega) ** 2 * geom.r**3)
    assert abs(pref * np.sum(terms)) <= res.tail


@pytest.mark.parametrize("eps", [1.5, 4.0, 12.0])
def test_lossless_mie_coefficients_are_bounded(omega, eps):
    k0 = wavenumber(omega)
    for size in (0.05, 0.5, 2.0, 8.0):
        for l in range(1, 9):
            assert abs(sphere.mie_rs(l, omega, size / k0, eps)) <= 1 + 1e-12
            assert abs(sphere.mie_rp(l, omega, size / k0, eps)) <= 1 + 1e-12


@pytest.mark.parametrize("l", [1, 2, 3])
def test_mie_rp_small_sphere_limit_all_orders(omega, l):
    R = 1e-2 / wavenumber(omega)
    assert sphere.mie_rp(l, omega, R, EPS_LOSSY) == pytest.approx(
        sphere.mie_rp_nonret(l, omega, R, EPS_LOSSY), rel=1e-3
    )


@pytest.mark.parametrize("eps", [EPS_LOSSY, 1.71 + 0.01j, -3.0 + 0.5j])
def test_antipodal_emitters_couple_more_weakly(omega, eps):
    same = sphere.g_sphere_rr_twopoint_nonret(
        sphere.SphereGeometry(2e-9, 1e-9), omega, eps
    )
    opposite = sphere.g_sphere_rr_twopoint_nonret(
        sphere.SphereGeometry(2e-9, 1e-9, np.pi), omega, eps
    )
    assert abs(opposite) < abs(same)
