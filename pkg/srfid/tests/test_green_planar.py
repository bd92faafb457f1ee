"""Tests for srfid.green.planar."""

import numpy as np
import pytest
from scipy.optimize import brentq

from srfid.constants import wavenumber
from srfid.errors import PoleError, QuadratureError
from srfid.green import planar

EPS_LOSSY = 2.0 + 1.0j
RATIOS = [0.1, 0.5, 1.0, 2 * np.sqrt(2), 5.0, 10.0, 20.0]


def test_planar_geometry_validation():
    assert planar.PlanarGeometry(1e-9).x == 0
    with pytest.raises(ValueError, match="positive"):
        planar.PlanarGeometry(0.0)
    with pytest.raises(ValueError, match="non-negative"):
        planar.PlanarGeometry(1e-9, -1e-9)
    with pytest.raises(ValueError, match="epsrel"):
        planar.QuadratureControl(epsrel=0)


def test_nonretarded_parameter_warns(omega, caplog):
    assert planar.nonretarded_parameter(omega, 1e-9) == pytest.approx(
        wavenumber(omega) * 1e-9
    )
    assert caplog.text.count("exceeds") == 0
    planar.nonretarded_parameter(omega, 1e-6)
    assert caplog.text.count("exceeds") == 1


def test_fresnel_coefficients_normal_incidence(omega):
    r_s, r_p = planar.fresnel_coefficients(0.0, omega, 1.0, 4.0)
    assert r_s == pytest.approx(-1 / 3)
    assert r_p == pytest.approx(1 / 3)


def test_fresnel_coefficients_evanescent_limit(omega):
    """Far in the evanescent range r_p tends to (eps - 1) / (eps + 1)."""
    k_par = 1e4 * wavenumber(omega)
    r_s, r_p = planar.fresnel_coefficients(k_par, omega, 1.0, EPS_LOSSY)
    assert r_p == pytest.approx((EPS_LOSSY - 1) / (EPS_LOSSY + 1), rel=1e-6)
    assert abs(r_s) < 1e-6
    with pytest.raises(ValueError):
        planar.fresnel_coefficients(-1.0, omega, 1.0, 2.0)


def test_coincident_nonret_structure(omega, z_bind):
    g = planar.g1_planar_coincident_nonret(z_bind, omega, EPS_LOSSY)
    k0 = wavenumber(omega)
    expected = (EPS_LOSSY - 1) / (EPS_LOSSY + 1) / (32 * np.pi * k0**2 * z_bind**3)
    assert g.component("xx") == pytest.approx(expected)
    assert g.component("yy") == g.component("xx")
    assert g.component("zz") == pytest.approx(2 * expected)
    with pytest.raises(PoleError):
        planar.g1_planar_coincident_nonret(z_bind, omega, -1.0)
    with pytest.raises(ValueError, match="positive"):
        planar.g1_planar_coincident_nonret(0.0, omega, 2.0)


@pytest.mark.parametrize("ratio", RATIOS)
def test_zz_twopoint_closed_form_matches_quadrature(omega, z_bind, ratio):
    """Closed form and Bessel-integral oracle agree to 1e-8."""
    x = ratio * z_bind
    closed = planar.g1_planar_zz_twopoint_nonret(x, z_bind, omega, EPS_LOSSY)
    quad = planar.g1_planar_zz_twopoint_quadrature(x, z_bind, omega, EPS_LOSSY)
    scale = abs(planar.g1_planar_zz_twopoint_nonret(0.0, z_bind, omega, EPS_LOSSY))
    assert abs(quad - closed) <= 1e-8 * max(abs(closed), 1e-3 * scale)


def test_zz_twopoint_zero_crossing(omega, z_bind):
    """Im G_zz changes sign at x = 2 sqrt(2) z."""

    def im_zz(ratio):
        return planar.g1_planar_zz_twopoint_nonret(
            ratio * z_bind, z_bind, omega, EPS_LOSSY
        ).imag

    root = brentq(im_zz, 1.0, 5.0, xtol=1e-14, rtol=1e-15)
    assert root == pytest.approx(2 * np.sqrt(2), abs=1e-10)
    assert im_zz(1.0) > 0 > im_zz(5.0)


def test_twopoint_at_coincidence_matches_coincident(omega, z_bind):
    twopoint = planar.g1_planar_zz_twopoint_nonret(1e-9 * z_bind, z_bind, omega, EPS_LOSSY)
    coincident = planar.g1_planar_coincident_nonret(z_bind, omega, EPS_LOSSY)
    assert twopoint == pytest.approx(coincident.component("zz"), rel=1e-9)
    full = planar.g1_planar_twopoint_nonret(0.0, z_bind, omega, EPS_LOSSY)
    np.testing.assert_allclose(full.entries, coincident.entries, rtol=1e-12)


@pytest.mark.parametrize("component", ["xx", "yy", "zz", "xz", "zx"])
def test_full_twopoint_tensor_matches_quadrature(omega, z_bind, component):
    x = 1.7 * z_bind
    closed = planar.g1_planar_twopoint_nonret(x, z_bind, omega, EPS_LOSSY)
    quad = planar.g1_planar_twopoint_quadrature(x, z_bind, omega, EPS_LOSSY, component)
    assert quad == pytest.approx(closed.component(component), rel=1e-8)


def test_full_twopoint_tensor_is_reciprocal(omega, z_bind):
    """Mirroring x -> -x gives the transpose, the tensor itself is not symmetric."""
    g = planar.g1_planar_twopoint_nonret(3 * z_bind, z_bind, omega, EPS_LOSSY)
    mirror = np.diag([-1.0, 1.0, 1.0])
    np.testing.assert_allclose(mirror @ g.entries @ mirror, g.entries.T)
    assert not g.is_symmetric()
    assert g.component("zx") == -g.component("xz")


def test_twopoint_quadrature_transparent_and_errors(omega, z_bind):
    assert planar.g1_planar_twopoint_quadrature(z_bind, z_bind, omega, 1.0) == 0
    with pytest.raises(ValueError, match="component"):
        planar.g1_planar_twopoint_quadrature(z_bind, z_bind, omega, 2.0, "xy")
    ctl = planar.QuadratureControl(epsrel=1e-14, limit=1)
    with pytest.raises(QuadratureError) as err:
        planar.g1_planar_zz_twopoint_quadrature(20 * z_bind, z_bind, omega, 2.0, ctl)
    assert err.value.abserr > 0


def test_retarded_coincident_matches_near_field(omega, z_bind):
    """At k0 z << 1 the full Fresnel integral reduces to the near-field tensor."""
    retarded = planar.g1_planar_coincident_quadrature(z_bind, omega, EPS_LOSSY)
    near = planar.g1_planar_coincident_nonret(z_bind, omega, EPS_LOSSY)
    for c in ("xx", "yy", "zz"):
        assert retarded.imag.component(c) == pytest.approx(
            near.imag.component(c), rel=5e-3
        )
    assert retarded.component("xy") == 0


def test_retarded_coincident_rejects_lossy_upper_medium(omega, z_bind):
    with pytest.raises(ValueError, match="lossless"):
        planar.g1_planar_coincident_quadrature(z_bind, omega, 2.0, eps1=1.0 + 0.1j)
