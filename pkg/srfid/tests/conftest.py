import numpy as np
import pytest
from _pytest.logging import LogCaptureFixture
from loguru import logger

from srfid.constants import ev_to_angular_frequency
from srfid.dielectric import LorentzModel, load_table

# transition frequency of the molecule used throughout the examples
OMEGA_T = 3.4753e15
# binding distance above the surface
Z_BIND = 0.5e-9


@pytest.fixture
def caplog(caplog: LogCaptureFixture):
    handler_id = logger.add(
        caplog.handler,
        format="{message}",
        level=0,
        filter=lambda record: record["level"].no >= caplog.handler.level,
        enqueue=False,
    )
    yield caplog
    logger.remove(handler_id)


@pytest.fixture(scope="session")
def omega():
    return OMEGA_T


@pytest.fixture(scope="session")
def z_bind():
    return Z_BIND


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture(scope="session")
def argon_model():
    """Single Lorentz oscillator with eps(0) = 1.71 and a peak at 11.67 eV."""
    w = ev_to_angular_frequency(11.67)
    g = ev_to_angular_frequency(0.5)
    return LorentzModel(eps_inf=1.0, oscillators=((0.71 * w**2, w, g),))


@pytest.fixture
def argon_table_path(tmp_path, argon_model):
    energy = np.round(np.arange(801) * 0.05, 10)
    eps = argon_model(ev_to_angular_frequency(energy))
    path = tmp_path / "argon.csv"
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("# argon-like test medium\n# energy_eV,eps_re,eps_im\n")
        for e, v in zip(energy, eps):
            f.write(f"{e!r},{v.real!r},{max(v.imag, 0.0)!r}\n")
    return str(path)


@pytest.fixture
def argon_table(argon_table_path):
    return load_table(argon_table_path)


@pytest.fixture
def vacuum_table_path(tmp_path):
    """Transparent table with eps = 2 + 0i."""
    path = tmp_path / "vacuumlike.csv"
    lines = [f"{e!r},2.0,0.0" for e in np.round(np.arange(81) * 0.5, 10)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return str(path)
