# -*- coding: utf-8 -*-
"""Parser for srfid."""


import argparse
from dataclasses import dataclass

import numpy as np

from srfid import __version__

GEOMETRIES = ("free", "plane", "sphere")
SWEEPABLE = ("x", "z", "arc", "theta", "radius", "omega", "ev")


@dataclass(frozen=True)
class Sweep:
    """
    A parameter grid given as ``min:max:count[:log]``.

    Attributes
    ----------
    start, stop : :obj:`float`
        First and last value.
    count : :obj:`int`
        Number of points, >= 1.
    log : :obj:`bool`
        Space the points geometrically.
    """

    start: float
    stop: float
    count: int
    log: bool = False

    def __post_init__(self):
        if self.count < 1:
            raise ValueError(f"Sweep count must be at least 1, got {self.count}.")
        if self.count > 1 and not self.stop > self.start:
            raise ValueError(
                f"Sweep must increase, got {self.start:g} to {self.stop:g}."
            )
        if self.log and not self.start > 0:
            raise ValueError("A logarithmic sweep needs a positive start.")

    def values(self):
        """Return the grid as an increasing array."""
        if self.count == 1:
            return np.array([self.start])
        space = np.geomspace if self.log else np.linspace
        return space(self.start, self.stop, self.count)

    def __str__(self):
        text = f"{self.start!r}:{self.stop!r}:{self.count}"
        return text + ":log" if self.log else text


def _sweep(text):
    """Argparse type for ``min:max:count[:log]``."""
    parts = text.split(":")
    if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] != "log"):
        raise argparse.ArgumentTypeError(
            f"'{text}' is not of the form min:max:count[:log]."
        )
    try:
        return Sweep(float(parts[0]), float(parts[1]), int(parts[2]), len(parts) == 4)
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"Invalid sweep '{text}': {err}")


def _dipole(text):
    """Argparse type for ``dx,dy,dz`` in debye."""
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        values = []
    if len(values) != 3 or not any(values):
        raise argparse.ArgumentTypeError(
            f"'{text}' is not a non-zero dipole of the form dx,dy,dz."
        )
    return tuple(values)


def _add_help(parser):
    parser.add_argument(
        "-h", "--help", action="help", help="Show this help message and exit"
    )


def _frequency_args():
    parent = argparse.ArgumentParser(add_help=False)
    freq = parent.add_argument_group("Frequency")
    choice = freq.add_mutually_exclusive_group()
    choice.add_argument(
        "--omega",
        dest="omega",
        type=float,
        help="Transition angular frequency in rad/s.",
        default=None,
    )
    choice.add_argument(
        "--ev",
        dest="ev",
        type=float,
        help="Transition energy in eV.",
        default=None,
    )
    return parent


def _medium_args():
    parent = argparse.ArgumentParser(add_help=False)
    med = parent.add_argument_group("Dielectric medium")
    choice = med.add_mutually_exclusive_group()
    choice.add_argument(
        "--eps",
        dest="eps_file",
        type=str,
        help="CSV file with columns energy_eV,eps_real,eps_imag.",
        default=None,
    )
    choice.add_argument(
        "--model",
        dest="model",
        type=str,
        help="Analytic medium: 'vacuum' or 'lorentz:<eps_inf>:<f,w,g;...>' "
        "with f in rad^2/s^2, w and g in rad/s.",
        default=None,
    )
    med.add_argument(
        "--eps-imag",
        dest="eps_imag_file",
        type=str,
        help="CSV file with columns xi_rad_s,eps giving eps at imaginary "
        "frequencies. Only used with --eps.",
        default=None,
    )
    return parent


def _geometry_args():
    parent = argparse.ArgumentParser(add_help=False)
    geo = parent.add_argument_group("Geometry (SI units)")
    geo.add_argument("--x", dest="x", type=float, default=None,
                     help="In-plane separation of the emitters in m. Default 0.")
    geo.add_argument("--z", dest="z", type=float, default=None,
                     help="Height of the emitters above the surface in m.")
    geo.add_argument("--radius", dest="radius", type=float, default=None,
                     help="Sphere radius in m.")
    angle = geo.add_mutually_exclusive_group()
    angle.add_argument("--theta", dest="theta", type=float, default=None,
                       help="Angle between the emitters seen from the sphere "
                       "centre in rad. Default 0.")
    angle.add_argument("--arc", dest="arc", type=float, default=None,
                       help="Arc length between the emitters in m.")

    sweep = parent.add_argument_group("Parameter sweep (min:max:count[:log])")
    choice = sweep.add_mutually_exclusive_group()
    for name in SWEEPABLE:
        choice.add_argument(
            f"--sweep-{name}",
            dest=f"sweep_{name}",
            type=_sweep,
            metavar="SPEC",
            help=f"Sweep {name} instead of a single value.",
            default=None,
        )
    return parent


def _series_args():
    parent = argparse.ArgumentParser(add_help=False)
    series = parent.add_argument_group("Numerical controls")
    series.add_argument(
        "--tol",
        dest="tol",
        type=float,
        help="Relative truncation tolerance of multipole sums. Default is 1e-10.",
        default=1e-10,
    )
    series.add_argument(
        "--lmax",
        dest="lmax",
        type=int,
        help="Highest multipole order of retarded sums (<= 200). Default is 200.",
        default=200,
    )
    series.add_argument(
        "--retarded",
        dest="retarded",
        action="store_true",
        help="Use the retarded Green functions instead of the near-field forms.",
        default=False,
    )
    return parent


def _output_args():
    parent = argparse.ArgumentParser(add_help=False)
    out = parent.add_argument_group("Output and logging")
    out.add_argument(
        "-o",
        "--output",
        dest="output",
        type=str,
        help="CSV file to write. Default is standard output.",
        default=None,
    )
    out.add_argument(
        "--log-dir",
        dest="log_dir",
        type=str,
        help="Folder where a log file is written. Default is no log file.",
        default=None,
    )
    out.add_argument(
        "-debug",
        "--debug",
        dest="debug",
        action="store_true",
        help="Print debugging messages. Default is False.",
        default=False,
    )
    out.add_argument(
        "-quiet",
        "--quiet",
        dest="quiet",
        action="store_true",
        help="Only print warnings and errors. Default is False.",
        default=False,
    )
    return parent


def _get_parser():
    """
    Parse command line inputs for srfid.

    Returns
    -------
    parser : :obj:`argparse.ArgumentParser`
    """
    parser = argparse.ArgumentParser(
        prog="srfid",
        description=(
            "%(prog)s computes dyadic Green functions near planar and spherical "
            "dielectrics, the decay rates and frequency shifts of emitters, and "
            "the superradiance fidelity of emitter pairs. Results are written "
            "as CSV.\n"
            f"Version {__version__}"
        ),
        add_help=False,
    )
    optional = parser.add_argument_group("Optional arguments")
    _add_help(optional)
    optional.add_argument(
        "-v", "--version", action="version", version=("%(prog)s " + __version__)
    )
    commands = parser.add_subparsers(dest="command", metavar="<command>")
    commands.required = True

    common = [_frequency_args(), _medium_args(), _geometry_args(), _series_args(),
              _output_args()]

    fidelity = commands.add_parser(
        "fidelity",
        parents=common,
        add_help=False,
        help="Superradiance fidelity of two emitters.",
    )
    fidelity.add_argument("geometry", choices=GEOMETRIES,
                          help="Environment of the emitters.")
    _add_help(fidelity)

    rate = commands.add_parser(
        "rate",
        parents=common,
        add_help=False,
        help="Total decay rate of one emitter.",
    )
    rate.add_argument("geometry", choices=GEOMETRIES,
                      help="Environment of the emitter.")
    emitter = rate.add_argument_group("Emitter")
    emitter.add_argument(
        "--dipole",
        dest="dipole",
        type=_dipole,
        help="Transition dipole dx,dy,dz in debye, z along the surface normal. "
        "Default is 0,0,1.",
        default=(0.0, 0.0, 1.0),
    )
    emitter.add_argument(
        "--average",
        dest="average",
        action="store_true",
        help="Average the dipole over its rotation about the surface normal.",
        default=False,
    )
    _add_help(rate)

    shift = commands.add_parser(
        "shift",
        parents=common,
        add_help=False,
        help="Frequency shift of an emitter above a planar surface.",
    )
    shift_opts = shift.add_argument_group("Emitter")
    shift_opts.add_argument(
        "--dipole",
        dest="dipole",
        type=_dipole,
        help="Transition dipole dx,dy,dz in debye. Default is 0,0,1.",
        default=(0.0, 0.0, 1.0),
    )
    shift_opts.add_argument(
        "--grid-ev",
        dest="grid_ev",
        type=_sweep,
        metavar="SPEC",
        help="Integration grid in eV for analytic media. Tables use their "
        "own energies.",
        default=None,
    )
    _add_help(shift)

    dielectric = commands.add_parser(
        "dielectric",
        parents=common,
        add_help=False,
        help="Inspect a dielectric medium.",
    )
    dielectric.add_argument("action", choices=("inspect",),
                            help="List eps, r_p and eps(i xi) at the sweep points.")
    _add_help(dielectric)

    return parser


if __name__ == "__main__":
    raise RuntimeError(
        "srfid/cli/run.py should not be run directly;\n"
        "Please `pip install` srfid and use the "
        "`srfid` command"
    )
