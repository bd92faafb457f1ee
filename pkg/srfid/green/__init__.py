"""Dyadic Green functions for free space, planar surfaces and spheres."""

from .free import g0_full, g0_im_coincident, g0_im_full, g0_im_twopoint, sinc
from .planar import (
    PlanarGeometry,
    QuadratureControl,
    fresnel_coefficients,
    g1_planar_coincident_nonret,
    g1_planar_coincident_quadrature,
    g1_planar_twopoint_nonret,
    g1_planar_twopoint_quadrature,
    g1_planar_zz_twopoint_nonret,
    g1_planar_zz_twopoint_quadrature,
    nonretarded_parameter,
)
from .sphere import (
    MieSeriesControl,
    SeriesResult,
    SphereGeometry,
    g_sphere_coincident,
    g_sphere_coincident_nonret,
    g_sphere_plane_limit,
    g_sphere_rr_twopoint_nonret,
    g_sphere_rr_twopoint_retarded,
    mie_rp,
    mie_rp_nonret,
    mie_rs,
)
from .tensor import CARTESIAN, SPHERICAL, GreenTensor

__all__ = [
    "GreenTensor",
    "CARTESIAN",
    "SPHERICAL",
    "sinc",
    "g0_full",
    "g0_im_full",
    "g0_im_twopoint",
    "g0_im_coincident",
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
