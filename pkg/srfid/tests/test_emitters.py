"""Tests for srfid.emitters."""

import numpy as np
import pytest

from srfid import emitters
from srfid.constants import DEBYE, HBAR, MU0
from srfid.errors import CoverageError
from srfid.green import GreenTensor, g0_im_coincident
from srfid.green.tensor import SPHERICAL

IMG_LEVEL = 1e6


def _box(a, b, level=IMG_LEVEL):
    """Im G with a constant zz entry on [a, b] and zero elsewhere."""

    def img(w):
        return GreenTensor.diagonal(0.0, 0.0, level if a <= w <= b else 0.0)

    return img


def _rotate(d, phi):
    c, s = np.cos(phi), np.sin(phi)
    return np.stack([c * d[0] - s * d[1], s * d[0] + c * d[1], np.full_like(phi, d[2])])


def test_emitter_validation(omega):
    em = emitters.Emitter.from_debye(omega, [0, 0, 2])
    assert em.dipole[2] == pytest.approx(2 * DEBYE)
    with pytest.raises(ValueError):
        em.dipole[0] = 1.0
    with pytest.raises(ValueError, match="positive"):
        emitters.Emitter(0.0, [0, 0, 1])
    with pytest.raises(ValueError, match="3-vector"):
        emitters.Emitter(omega, [1, 0])
    with pytest.raises(ValueError, match="non-zero"):
        emitters.Emitter(omega, [0, 0, 0])


def test_free_space_rate_is_einstein_rate(rng):
    for _ in range(100):
        w = rng.uniform(1e14, 1e16)
        d = rng.normal(size=3) * DEBYE
        em = emitters.Emitter(w, d)
        rate = emitters.transition_rate(em, g0_im_coincident(w))
        assert rate == pytest.approx(emitters.einstein_rate(w, d), rel=1e-12)


def test_transition_rate_is_bilinear_in_dipole(omega, rng):
    img = GreenTensor(rng.normal(size=(3, 3)))
    d = rng.normal(size=3) * DEBYE
    one = emitters.transition_rate(emitters.Emitter(omega, d), img)
    three = emitters.transition_rate(emitters.Emitter(omega, 3 * d), img)
    assert three == pytest.approx(9 * one)
    zero = emitters.transition_rate(emitters.Emitter(omega, d), GreenTensor.zeros())
    assert zero == 0


def test_transition_rate_reads_spherical_tensor_in_local_frame(omega):
    img = GreenTensor.diagonal(3.0, 1.0, 1.0, SPHERICAL)
    normal = emitters.Emitter(omega, [0, 0, DEBYE])
    tangential = emitters.Emitter(omega, [DEBYE, 0, 0])
    ratio = emitters.transition_rate(normal, img) / emitters.transition_rate(
        tangential, img
    )
    assert ratio == pytest.approx(3.0)


def test_transition_rate_rejects_complex_tensor(omega):
    em = emitters.Emitter(omega, [0, 0, DEBYE])
    with pytest.raises(ValueError, match="imaginary part"):
        emitters.transition_rate(em, GreenTensor.diagonal(1j, 1j, 1 + 1j))


def test_rate_result(omega):
    em = emitters.Emitter(omega, [0, 0, DEBYE])
    free = emitters.einstein_rate(omega, em.dipole)
    res = emitters.rate_result(em, g0_im_coincident(omega))
    assert res.gamma_free == pytest.approx(free)
    assert res.total == pytest.approx(2 * free)
    assert res.purcell_factor == pytest.approx(2.0)
    with pytest.raises(ValueError, match="passive"):
        emitters.rate_result(em, g0_im_coincident(omega) * -2.0)


def test_frequency_shift_matches_closed_form(omega):
    em = emitters.Emitter(omega, [0, 0, DEBYE])
    a, b = 0.5 * omega, 2.0 * omega
    grid = [0.0, a, b, 2 * b]

    def antiderivative(w, shift):
        return w**2 / 2 - shift * w + shift**2 * np.log(abs(w + shift))

    pref = -MU0 / (HBAR * np.pi) * IMG_LEVEL * DEBYE**2
    expected = pref * (antiderivative(b, omega) - antiderivative(a, omega))
    result = emitters.frequency_shift(em, _box(a, b), grid)
    assert result == pytest.approx(expected, rel=1e-8)

    # upward term: the pole at omega sits inside [a, b]
    expected = pref * (antiderivative(b, -omega) - antiderivative(a, -omega))
    result = emitters.frequency_shift(em, _box(a, b), grid, omega_kn=-omega)
    assert result == pytest.approx(expected, rel=1e-8)


def test_frequency_shift_is_linear(omega):
    em = emitters.Emitter(omega, [0, 0, DEBYE])
    grid = np.linspace(0, 4 * omega, 9)
    one = emitters.frequency_shift(em, _box(omega, 2 * omega), grid)
    two = emitters.frequency_shift(em, _box(omega, 2 * omega, 2 * IMG_LEVEL), grid)
    assert two == pytest.approx(2 * one, rel=1e-10)
    assert one < 0


@pytest.mark.parametrize("upward", [False, True])
def test_frequency_shift_converges_with_grid(omega, upward):
    em = emitters.Emitter(omega, [0, 0, DEBYE])

    def img(w):
        level = IMG_LEVEL * np.exp(-(((w - 1.3 * omega) / (0.3 * omega)) ** 2))
        return GreenTensor.diagonal(0.0, 0.0, level)

    omega_kn = -omega if upward else None
    coarse = np.linspace(0, 4 * omega, 41)
    fine = np.linspace(0, 4 * omega, 81)
    one = emitters.frequency_shift(em, img, coarse, omega_kn=omega_kn)
    two = emitters.frequency_shift(em, img, fine, omega_kn=omega_kn)
    assert two == pytest.approx(one, rel=1e-6)


def test_frequency_shift_edge_cases(omega):
    em = emitters.Emitter(omega, [0, 0, DEBYE])
    grid = [0.0, omega, 2 * omega]
    assert emitters.frequency_shift(em, lambda w: GreenTensor.zeros(), grid) == 0.0
    with pytest.raises(CoverageError, match="extend"):
        emitters.frequency_shift(em, _box(0.0, 10 * omega), grid)
    with pytest.raises(ValueError, match="increasing"):
        emitters.frequency_shift(em, _box(0.0, omega), [0.0, 2 * omega, omega])
    with pytest.raises(ValueError, match="increasing"):
        emitters.frequency_shift(em, _box(0.0, omega), [omega])


def test_rot_avg_planar_coincident(rng):
    d = rng.normal(size=3)
    tensor = np.diag([1.0, 1.0, 2.0])
    phi = rng.uniform(0, 2 * np.pi, 100_000)
    rotated = _rotate(d, phi)
    sampled = np.mean(np.einsum("in,ij,jn->n", rotated, tensor, rotated))
    assert emitters.rot_avg_planar_coincident(d) == pytest.approx(sampled, rel=1e-2)


def test_rot_avg_planar_cross(rng):
    d = rng.normal(size=3)
    d /= np.linalg.norm(d)
    tensor = 0.3 * rng.normal(size=(3, 3))
    tensor[2, 2] = 1.0
    first = _rotate(d, rng.uniform(0, 2 * np.pi, 100_000))
    second = _rotate(d, rng.uniform(0, 2 * np.pi, 100_000))
    sampled = np.mean(np.einsum("in,ij,jn->n", first, tensor, second))
    assert emitters.rot_avg_planar_cross(d) == pytest.approx(sampled, abs=1e-2)


@pytest.mark.parametrize("cross", [False, True])
def test_rot_avg_sphere(rng, cross):
    d = rng.normal(size=3)
    A_r, A_phi = 2.5, 0.7
    phi = rng.uniform(0, 2 * np.pi, 100_000)
    first = _rotate(d, phi)
    if cross:
        tensor = np.diag([0.0, 0.0, A_r])
        second = _rotate(d, rng.uniform(0, 2 * np.pi, 100_000))
    else:
        tensor = np.diag([A_phi, A_phi, A_r])
        second = first
    sampled = np.mean(np.einsum("in,ij,jn->n", first, tensor, second))
    result = emitters.rot_avg_sphere(A_r, A_phi, d, cross=cross)
    assert result == pytest.approx(sampled, abs=1e-2 * A_r * np.sum(d**2))
