"""References to be imported and injected throughout the package."""

from .due import BibTeX, Doi

BOHREN_HUFFMAN_1983 = Doi("10.1002/9783527618156")

BUHMANN_2012 = Doi("10.1007/978-3-642-32484-0")

BUHMANN_2004 = Doi("10.1103/PhysRevA.70.052117")

DUNG_KNOLL_WELSCH_2003 = Doi("10.1103/PhysRevA.68.043816")

LI_1994 = Doi("10.1109/22.320781")

GAUTSCHI_1967 = Doi("10.1137/1009002")

PURCELL_1946 = Doi("10.1103/PhysRev.69.674.2")

WISCOMBE_1980 = Doi("10.1364/AO.19.001505")

SUPERRADIANCE_FIDELITY = BibTeX(
    """
    @misc{srfid_fidelity_model,
        title = {Superradiance fidelity of emitter pairs near planar and spherical dielectrics},
        note = {Ratio of the cross to the local mode density, built from
                non-retarded scattering Green functions},
    }
    """
)
