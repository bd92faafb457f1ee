from ._version import get_versions

__version__ = get_versions()["version"]
del get_versions

from . import constants, dielectric, emitters, errors, fidelity, green, specfun
from .dielectric import (
    DielectricTable,
    LorentzModel,
    load_imaginary_axis,
    load_table,
    permittivity_at,
    permittivity_imaginary_axis,
)
from .emitters import Emitter, RateResult, frequency_shift, rate_result, transition_rate
from .fidelity import (
    FidelityCurve,
    scan,
    sigma_free,
    sigma_plane,
    sigma_plane_small_lambda,
    sigma_sphere,
)
from .green import GreenTensor, MieSeriesControl, PlanarGeometry, SphereGeometry
