"""
Dielectric response of the surface material.

The permittivity is read from tabulated data (photon energy in eV against the
complex relative permittivity) or generated by a Lorentz oscillator model.
Tables are interpolated linearly in photon energy and never extrapolated.
"""

import io
import os
from dataclasses import dataclass, field, replace

import numpy as np
from loguru import logger
from scipy.integrate import trapezoid

from .constants import angular_frequency_to_ev, ev_to_angular_frequency
from .errors import DielectricFormatError, DielectricRangeError, PoleError

__all__ = [
    "DielectricTable",
    "LorentzModel",
    "load_table",
    "load_imaginary_axis",
    "permittivity_at",
    "permittivity_imaginary_axis",
    "fresnel_rp_nonret",
    "fresnel_rp_nonret_at",
    "parse_lorentz_model",
]

# relative slack on the table edges, absorbs eV <-> rad/s round-off
_EDGE_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class DielectricTable:
    """
    Tabulated complex permittivity.

    Attributes
    ----------
    energy : :obj:`numpy.ndarray`
        Strictly increasing photon energies, in eV.
    eps : :obj:`numpy.ndarray`
        Complex relative permittivity at each energy, with Im eps >= 0.
    xi : :obj:`numpy.ndarray` or None
        Strictly increasing imaginary frequencies, in rad/s.
    eps_imag_axis : :obj:`numpy.ndarray` or None
        Real permittivity eps(i xi) >= 1, non-increasing in xi.
    name : :obj:`str`
        Label used in logs and CSV headers.
    """

    energy: np.ndarray
    eps: np.ndarray
    xi: np.ndarray = None
    eps_imag_axis: np.ndarray = None
    name: str = field(default="table")

    def __post_init__(self):
        energy = np.asarray(self.energy, dtype=float)
        eps = np.asarray(self.eps, dtype=complex)
        if energy.ndim != 1 or energy.shape != eps.shape or energy.size == 0:
            raise DielectricFormatError(
                "Energies and permittivities must be non-empty 1D arrays of equal length."
            )
        if energy[0] < 0:
            raise DielectricFormatError(f"Negative photon energy {energy[0]} eV.")
        bad = np.flatnonzero(np.diff(energy) <= 0)
        if bad.size:
            raise DielectricFormatError(
                f"Energies must be strictly increasing, sample {bad[0] + 1} is not."
            )
        if np.any(eps.imag < 0):
            raise DielectricFormatError("Im eps must be non-negative (passive medium).")
        object.__setattr__(self, "energy", energy)
        object.__setattr__(self, "eps", eps)

        if (self.xi is None) != (self.eps_imag_axis is None):
            raise DielectricFormatError(
                "Imaginary-axis frequencies and values must be given together."
            )
        if self.xi is not None:
            xi, eps_xi = _validate_imaginary_axis(self.xi, self.eps_imag_axis)
            object.__setattr__(self, "xi", xi)
            object.__setattr__(self, "eps_imag_axis", eps_xi)

    def __len__(self):
        return self.energy.size

    @property
    def omega(self):
        """Sample angular frequencies, in rad/s."""
        return ev_to_angular_frequency(self.energy)

    @property
    def has_imaginary_axis(self):
        return self.xi is not None

    def with_imaginary_axis(self, xi, eps):
        """Return a copy of the table carrying imaginary-axis samples."""
        return replace(self, xi=xi, eps_imag_axis=eps)


@dataclass(frozen=True)
class LorentzModel:
    """
    Lorentz oscillator permittivity.

    eps(omega) = eps_inf + sum_j f_j / (w_j**2 - omega**2 - i g_j omega)

    Attributes
    ----------
    eps_inf : :obj:`float`
        High-frequency permittivity, >= 1.
    oscillators : :obj:`tuple`
        Triples (f_j, w_j, g_j): strength in rad^2/s^2 (>= 0), resonance in rad/s
        (> 0) and damping in rad/s (> 0).
    """

    eps_inf: float = 1.0
    oscillators: tuple = ()

    def __post_init__(self):
        if not self.eps_inf >= 1:
            raise ValueError(f"eps_inf must be >= 1, got {self.eps_inf}.")
        oscillators = tuple(tuple(float(v) for v in osc) for osc in self.oscillators)
        for osc in oscillators:
            if len(osc) != 3:
                raise ValueError(f"An oscillator needs (f, w, g), got {osc}.")
            f, w, g = osc
            if f < 0 or w <= 0 or g <= 0:
                raise ValueError(
                    f"Oscillator requires f >= 0, w > 0 and g > 0, got {osc}."
                )
        object.__setattr__(self, "oscillators", oscillators)

    @property
    def static(self):
        """Static permittivity eps(0) = eps_inf + sum f_j / w_j**2."""
        return self.eps_inf + sum(f / w**2 for f, w, _ in self.oscillators)

    @property
    def name(self):
        if not self.oscillators:
            return "vacuum" if self.eps_inf == 1 else f"constant:{self.eps_inf!r}"
        osc = ";".join(f"{f!r},{w!r},{g!r}" for f, w, g in self.oscillators)
        return f"lorentz:{self.eps_inf!r}:{osc}"

    def __call__(self, omega):
        omega = np.asarray(omega, dtype=float)
        eps = np.full(omega.shape, self.eps_inf, dtype=complex)
        for f, w, g in self.oscillators:
            eps = eps + f / (w**2 - omega**2 - 1j * g * omega)
        return eps

    def imaginary_axis(self, xi):
        xi = np.asarray(xi, dtype=float)
        eps = np.full(xi.shape, self.eps_inf, dtype=float)
        for f, w, g in self.oscillators:
            eps = eps + f / (w**2 + xi**2 + g * xi)
        return eps


def _validate_imaginary_axis(xi, eps):
    xi = np.asarray(xi, dtype=float)
    eps = np.asarray(eps)
    if np.iscomplexobj(eps):
        if np.any(eps.imag != 0):
            raise DielectricFormatError("eps(i xi) must be real.")
        eps = eps.real
    eps = eps.astype(float)
    if xi.ndim != 1 or xi.shape != eps.shape or xi.size == 0:
        raise DielectricFormatError(
            "Imaginary-axis frequencies and values must be non-empty 1D arrays "
            "of equal length."
        )
    if xi[0] < 0 or np.any(np.diff(xi) <= 0):
        raise DielectricFormatError(
            "Imaginary frequencies must be non-negative and strictly increasing."
        )
    if np.any(eps < 1):
        raise DielectricFormatError("eps(i xi) must be >= 1.")
    if np.any(np.diff(eps) > 0):
        raise DielectricFormatError("eps(i xi) must decrease monotonically in xi.")
    return xi, eps


def _open_lines(source):
    """Yield (line number, text) pairs from a path, a text stream or a byte stream."""
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as f:
            data = f.read()
    else:
        data = source.read()
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as err:
            raise DielectricFormatError(f"Input is not valid UTF-8: {err}.")
    for number, line in enumerate(io.StringIO(data), start=1):
        yield number, line.strip()


def _parse_rows(source, n_columns, header):
    rows = []
    lines = []
    for number, line in _open_lines(source):
        if not line or line.startswith("#"):
            continue
        fields = line.split(",")
        if len(fields) != n_columns:
            raise DielectricFormatError(
                f"expected {n_columns} comma-separated columns ({header}), "
                f"found {len(fields)}.",
                line=number,
            )
        try:
            values = [float(v) for v in fields]
        except ValueError:
            raise DielectricFormatError(
                f"could not parse '{line}' as decimal numbers.", line=number
            )
        if not np.all(np.isfinite(values)):
            raise DielectricFormatError("non-finite value.", line=number)
        rows.append(values)
        lines.append(number)
    if not rows:
        raise DielectricFormatError(f"No data rows ({header}) found.")
    return np.array(rows), lines


def load_table(source, imaginary_axis=None, name=None):
    """
    Load a dielectric table.

    Parameters
    ----------
    source : path or file-like
        UTF-8 CSV with '#' comment lines and rows ``energy_eV,eps_re,eps_im``.
    imaginary_axis : path or file-like, optional
        CSV with rows ``xi_rad_s,eps`` (see :func:`load_imaginary_axis`).
    name : :obj:`str`, optional
        Label of the table. Defaults to the file name.

    Returns
    -------
    :obj:`DielectricTable`

    Raises
    ------
    DielectricFormatError
        If a row cannot be parsed, energies are not strictly increasing, or
        Im eps is negative. The message carries the offending line number.
    """
    data, lines = _parse_rows(source, 3, "energy_eV,eps_re,eps_im")
    energy = data[:, 0]
    for i in range(1, energy.size):
        if energy[i] <= energy[i - 1]:
            raise DielectricFormatError(
                f"energy {energy[i]} eV does not exceed the previous {energy[i - 1]} eV.",
                line=lines[i],
            )
    if energy[0] < 0:
        raise DielectricFormatError("negative photon energy.", line=lines[0])
    negative = np.flatnonzero(data[:, 2] < 0)
    if negative.size:
        raise DielectricFormatError(
            f"Im eps = {data[negative[0], 2]} is negative (passive media only).",
            line=lines[negative[0]],
        )

    if name is None:
        name = (
            os.path.basename(source)
            if isinstance(source, (str, os.PathLike))
            else "table"
        )
    xi = eps_xi = None
    if imaginary_axis is not None:
        xi, eps_xi = load_imaginary_axis(imaginary_axis)

    table = DielectricTable(
        energy=energy,
        eps=data[:, 1] + 1j * data[:, 2],
        xi=xi,
        eps_imag_axis=eps_xi,
        name=str(name),
    )
    logger.debug(
        f"Loaded {len(table)} dielectric samples between {energy[0]} and "
        f"{energy[-1]} eV from {table.name}"
    )
    return table


def load_imaginary_axis(source):
    """
    Load imaginary-axis permittivity samples.

    Parameters
    ----------
    source : path or file-like
        UTF-8 CSV with '#' comment lines and rows ``xi_rad_s,eps``.

    Returns
    -------
    xi, eps : :obj:`numpy.ndarray`
        Imaginary frequencies in rad/s and the real values eps(i xi).

    Raises
    ------
    DielectricFormatError
        If a row cannot be parsed, xi is not strictly increasing, or eps(i xi)
        is below 1 or increases with xi.
    """
    data, lines = _parse_rows(source, 2, "xi_rad_s,eps")
    xi, eps = data[:, 0], data[:, 1]
    for i in range(xi.size):
        if xi[i] < 0 or (i and xi[i] <= xi[i - 1]):
            raise DielectricFormatError(
                f"xi = {xi[i]} rad/s breaks the strictly increasing order.",
                line=lines[i],
            )
        if eps[i] < 1:
            raise DielectricFormatError(
                f"eps(i xi) = {eps[i]} is below 1.", line=lines[i]
            )
        if i and eps[i] > eps[i - 1]:
            raise DielectricFormatError(
                f"eps(i xi) = {eps[i]} increases with xi.", line=lines[i]
            )
    return xi, eps


def _as_output(values):
    return complex(values) if np.ndim(values) == 0 else values


def _check_in_range(x, lo, hi, unit, what):
    x = np.asarray(x, dtype=float)
    slack = _EDGE_RTOL * max(abs(lo), abs(hi))
    if np.any(x < lo - slack) or np.any(x > hi + slack):
        raise DielectricRangeError(
            f"{what} {x.min() if x.size else x} .. {x.max() if x.size else x} {unit} "
            f"outside the tabulated range [{lo}, {hi}] {unit}."
        )
    return np.clip(x, lo, hi)


def permittivity_at(medium, omega):
    """
    Complex relative permittivity at angular frequency `omega`.

    Parameters
    ----------
    medium : :obj:`DielectricTable` or :obj:`LorentzModel`
        Dielectric response.
    omega : :obj:`float` or array-like
        Angular frequency, rad/s, >= 0.

    Returns
    -------
    eps : :obj:`complex` or :obj:`numpy.ndarray`

    Raises
    ------
    DielectricRangeError
        If `omega` lies outside a table's sampled range.

    Notes
    -----
    Real and imaginary parts of tabulated data are interpolated linearly in
    photon energy, which keeps Im eps >= 0 between samples.
    """
    omega = np.asarray(omega, dtype=float)
    if np.any(omega < 0):
        raise ValueError(f"Angular frequency must be non-negative, got {omega}.")
    if isinstance(medium, LorentzModel):
        return _as_output(medium(omega))

    energy = angular_frequency_to_ev(omega)
    energy = _check_in_range(
        energy, medium.energy[0], medium.energy[-1], "eV", "Photon energy"
    )
    eps = np.interp(energy, medium.energy, medium.eps.real) + 1j * np.interp(
        energy, medium.energy, medium.eps.imag
    )
    return _as_output(eps)


def permittivity_imaginary_axis(medium, xi):
    """
    Permittivity at imaginary frequency, eps(i xi).

    Tabulated imaginary-axis samples are interpolated linearly. A table without
    them is continued through the Kramers-Kronig relation

        eps(i xi) = 1 + (2 / pi) int_0^inf w Im eps(w) / (w**2 + xi**2) dw,

    evaluated by the trapezoidal rule on the table grid. Lorentz models use
    their closed form.

    Parameters
    ----------
    medium : :obj:`DielectricTable` or :obj:`LorentzModel`
    xi : :obj:`float` or array-like
        Imaginary frequency, rad/s, >= 0.

    Returns
    -------
    :obj:`float` or :obj:`numpy.ndarray`
    """
    xi = np.asarray(xi, dtype=float)
    if np.any(xi < 0):
        raise ValueError(f"Imaginary frequency must be non-negative, got {xi}.")
    if isinstance(medium, LorentzModel):
        eps = medium.imaginary_axis(xi)
    elif medium.has_imaginary_axis:
        xi = _check_in_range(
            xi, medium.xi[0], medium.xi[-1], "rad/s", "Imaginary frequency"
        )
        eps = np.interp(xi, medium.xi, medium.eps_imag_axis)
    else:
        w = medium.omega
        integrand = w * medium.eps.imag / (w**2 + np.atleast_1d(xi)[:, np.newaxis] ** 2)
        eps = 1 + (2 / np.pi) * trapezoid(integrand, w, axis=-1)
        eps = eps.reshape(xi.shape)
    return float(eps) if np.ndim(eps) == 0 else eps


def fresnel_rp_nonret(eps):
    """
    Non-retarded p-polarised reflection coefficient of a vacuum/medium interface.

    Parameters
    ----------
    eps : :obj:`complex`
        Relative permittivity of the medium.

    Returns
    -------
    r_p : :obj:`complex`
        (eps - 1) / (eps + 1).

    Raises
    ------
    PoleError
        At the surface-plasmon condition eps = -1.
    """
    eps = complex(eps)
    if eps == -1:
        raise PoleError("eps = -1 is the surface-mode pole of r_p = (eps-1)/(eps+1).")
    return (eps - 1) / (eps + 1)


def fresnel_rp_nonret_at(medium, omega):
    """Non-retarded r_p of `medium` at angular frequency `omega`."""
    return fresnel_rp_nonret(permittivity_at(medium, float(omega)))


def parse_lorentz_model(spec):
    """
    Build a :obj:`LorentzModel` from its command-line description.

    Parameters
    ----------
    spec : :obj:`str`
        ``vacuum`` or ``lorentz:<eps_inf>:<f,w,g;f,w,g;...>`` with SI values
        (rad^2/s^2, rad/s, rad/s). The oscillator list may be empty.

    Returns
    -------
    :obj:`LorentzModel`
    """
    spec = spec.strip()
    if spec == "vacuum":
        return LorentzModel()
    parts = spec.split(":")
    if parts[0] != "lorentz" or len(parts) not in (2, 3):
        raise ValueError(
            f"Model '{spec}' is neither 'vacuum' nor 'lorentz:<eps_inf>:<f,w,g;...>'."
        )
    try:
        eps_inf = float(parts[1])
        oscillators = []
        if len(parts) == 3 and parts[2].strip():
            for osc in parts[2].split(";"):
                if osc.strip():
                    oscillators.append(tuple(float(v) for v in osc.split(",")))
    except ValueError:
        raise ValueError(f"Model '{spec}' contains a value that is not a number.")
    return LorentzModel(eps_inf=eps_inf, oscillators=tuple(oscillators))
