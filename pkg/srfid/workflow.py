#!/usr/bin/env python3

"""
srfid computes the superradiance fidelity of emitter pairs near dielectrics.

The command line workflow parses the arguments, loads the dielectric medium,
evaluates the requested quantity over a parameter grid and writes it as CSV.

Copyright 2024, The srfid developers.
Please scroll to bottom to read full license.
"""

import datetime
import logging
import os
import sys
from dataclasses import dataclass

import numpy as np
import pandas as pd
from loguru import logger

from . import __version__, references
from .cli.run import SWEEPABLE, _get_parser
from .constants import ev_to_angular_frequency, wavenumber
from .dielectric import (
    DielectricTable,
    fresnel_rp_nonret,
    load_table,
    parse_lorentz_model,
    permittivity_at,
    permittivity_imaginary_axis,
)
from .due import due
from .emitters import Emitter, frequency_shift, rate_result
from .errors import SrfidError
from .fidelity import scan, sigma_free, sigma_plane, sigma_sphere
from .green import (
    GreenTensor,
    MieSeriesControl,
    SphereGeometry,
    g1_planar_coincident_nonret,
    g1_planar_coincident_quadrature,
    g_sphere_coincident,
    g_sphere_coincident_nonret,
    nonretarded_parameter,
)

LGR = logging.getLogger(__name__)
LGR.setLevel(logging.INFO)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_MISSING_FILE = 3

UNITS = {"x": "m", "z": "m", "arc": "m", "radius": "m", "theta": "rad",
         "omega": "rad/s", "ev": "eV"}
# parameters each result depends on
SWEEPS = {
    ("fidelity", "free"): ("x", "omega", "ev"),
    ("fidelity", "plane"): ("x", "z", "omega", "ev"),
    ("fidelity", "sphere"): ("arc", "theta", "z", "radius", "omega", "ev"),
    ("rate", "free"): ("omega", "ev"),
    ("rate", "plane"): ("z", "omega", "ev"),
    ("rate", "sphere"): ("z", "radius", "omega", "ev"),
    ("shift", None): ("z", "omega", "ev"),
    ("dielectric", None): ("omega", "ev"),
}
COLUMNS = {
    "fidelity": ["sigma"],
    "rate": ["rate_per_s"],
    "shift": ["shift_rad_s"],
    "dielectric": ["eps_real", "eps_imag", "rp_real", "rp_imag", "eps_imag_axis"],
}


class _InterceptHandler(logging.Handler):
    """Forward standard-library records to loguru."""

    def emit(self, record):
        try:
            level = logger.level(record.levelname).name
        except ValueError:
            level = record.levelno
        logger.opt(depth=6, exception=record.exc_info).log(level, record.getMessage())


@dataclass(frozen=True)
class RunConfig:
    """
    Validated settings of one command line run.

    Attributes
    ----------
    command : :obj:`str`
        ``fidelity``, ``rate``, ``shift`` or ``dielectric``.
    geometry : :obj:`str` or None
        ``free``, ``plane`` or ``sphere`` for fidelity and rate runs.
    omega : :obj:`float` or None
        Fixed angular frequency, rad/s; None when the frequency is swept.
    x, z, radius, theta, arc : :obj:`float` or None
        Fixed geometry parameters in SI units.
    sweep_name : :obj:`str` or None
        Swept parameter, one of ``x, z, arc, theta, radius, omega, ev``.
    sweep : :obj:`srfid.cli.run.Sweep` or None
    medium : :obj:`srfid.dielectric.DielectricTable` or :obj:`LorentzModel` or None
    series : :obj:`srfid.green.MieSeriesControl`
    retarded : :obj:`bool`
    dipole : :obj:`tuple`
        Transition dipole in debye.
    average : :obj:`bool`
    grid_ev : :obj:`srfid.cli.run.Sweep` or None
        Frequency-shift integration grid for analytic media.
    """

    command: str
    geometry: str = None
    omega: float = None
    x: float = 0.0
    z: float = None
    radius: float = None
    theta: float = None
    arc: float = None
    sweep_name: str = None
    sweep: object = None
    medium: object = None
    series: MieSeriesControl = MieSeriesControl()
    retarded: bool = False
    dipole: tuple = (0.0, 0.0, 1.0)
    average: bool = False
    grid_ev: object = None

    @property
    def label(self):
        return f"{self.command} {self.geometry or ''}".strip()

    @property
    def parameter(self):
        """Name of the first CSV column."""
        if self.sweep_name is not None:
            return self.sweep_name
        if self.command == "fidelity":
            if self.geometry == "sphere":
                return "arc" if self.arc is not None else "theta"
            return "x"
        if self.command == "shift" or (
            self.command == "rate" and self.geometry != "free"
        ):
            return "z"
        return "omega"

    def values(self):
        """Parameter grid of the run."""
        if self.sweep is not None:
            return self.sweep.values()
        value = {
            "x": self.x,
            "z": self.z,
            "arc": self.arc,
            "theta": self.theta or 0.0,
            "omega": self.omega,
        }[self.parameter]
        return np.array([value], dtype=float)

    def at(self, value):
        """Parameter set of one grid point."""
        point = {
            "omega": self.omega,
            "x": self.x,
            "z": self.z,
            "radius": self.radius,
            "theta": self.theta or 0.0,
            "arc": self.arc,
        }
        name = self.parameter
        if name == "ev":
            point["omega"] = ev_to_angular_frequency(value)
        else:
            point[name] = float(value)
        if name == "theta":
            point["arc"] = None
        return point

    def header(self):
        """Comment line echoing every setting that shapes the data rows."""
        items = [
            ("omega", self.omega),
            ("x", self.x if self.parameter != "x" and self.command == "fidelity"
             and self.geometry != "sphere" else None),
            ("z", self.z),
            ("radius", self.radius),
            ("theta", self.theta),
            ("arc", self.arc),
            ("medium", getattr(self.medium, "name", None)),
            ("sweep", f"{self.sweep_name}={self.sweep}" if self.sweep else None),
            ("retarded", self.retarded or None),
            ("tol", self.series.tol if self.geometry == "sphere" else None),
            ("lmax", self.series.l_max_cap if self.retarded else None),
            ("dipole", ",".join(repr(d) for d in self.dipole)
             if self.command in ("rate", "shift") else None),
            ("average", self.average or None),
            ("grid_ev", str(self.grid_ev) if self.grid_ev else None),
        ]
        fields = " ".join(
            f"{k}={v!r}" if isinstance(v, float) else f"{k}={v}"
            for k, v in items
            if v is not None
        )
        return f"# srfid {self.label} {fields}".rstrip()


def _load_medium(options):
    if options.eps_file is not None:
        for path in (options.eps_file, options.eps_imag_file):
            if path is not None and not os.path.isfile(path):
                raise FileNotFoundError(f"The file {path} does not exist!")
        name = os.path.basename(options.eps_file)
        return load_table(
            options.eps_file, imaginary_axis=options.eps_imag_file, name=name
        )
    if options.model is not None:
        return parse_lorentz_model(options.model)
    return None


def configure(options, parser):
    """
    Check the parsed options for coherence and build a :obj:`RunConfig`.

    Usage errors are reported through ``parser.error`` (exit status 2).
    """
    sweeps = [n for n in SWEEPABLE if getattr(options, f"sweep_{n}") is not None]
    sweep_name = sweeps[0] if sweeps else None
    sweep = getattr(options, f"sweep_{sweep_name}") if sweep_name else None
    command = options.command
    geometry = getattr(options, "geometry", None)

    omega = options.omega
    if options.ev is not None:
        omega = ev_to_angular_frequency(options.ev)
    if sweep_name in ("omega", "ev"):
        omega = None
    elif omega is None:
        parser.error("one of --omega or --ev (or a frequency sweep) is required")
    elif not omega > 0:
        parser.error(f"the frequency must be positive, got {omega}")

    try:
        medium = _load_medium(options)
    except ValueError as err:
        if options.model is not None:
            parser.error(f"--model: {err}")
        raise

    surface = geometry in ("plane", "sphere")
    if (surface or command in ("shift", "dielectric")) and medium is None:
        parser.error(f"'{command}' needs a medium: give --eps or --model")
    if command == "shift" or surface:
        if options.z is None and sweep_name != "z":
            parser.error("--z (or --sweep-z) is required")
    if geometry == "sphere" and options.radius is None and sweep_name != "radius":
        parser.error("--radius (or --sweep-radius) is required")
    if options.retarded and not (
        (command == "fidelity" and geometry == "sphere")
        or (command == "rate" and geometry in ("plane", "sphere"))
    ):
        parser.error("--retarded applies to sphere fidelity and plane/sphere rates")
    grid_ev = getattr(options, "grid_ev", None)
    analytic = not isinstance(medium, DielectricTable)
    if command == "shift" and analytic and grid_ev is None:
        parser.error("'shift' with an analytic medium needs --grid-ev")
    if sweep_name in ("arc", "theta") and geometry != "sphere":
        parser.error(f"--sweep-{sweep_name} needs the sphere geometry")
    allowed = SWEEPS.get((command, geometry), SWEEPS.get((command, None)))
    if sweep_name is not None and sweep_name not in allowed:
        parser.error(
            f"--sweep-{sweep_name} does not apply to '{command} {geometry or ''}'; "
            f"sweep one of {', '.join(allowed)}"
        )

    try:
        series = MieSeriesControl(tol=options.tol, l_max_cap=options.lmax)
    except ValueError as err:
        parser.error(str(err))

    return RunConfig(
        command=command,
        geometry=geometry,
        omega=omega,
        x=options.x if options.x is not None else 0.0,
        z=options.z,
        radius=options.radius,
        theta=options.theta,
        arc=options.arc,
        sweep_name=sweep_name,
        sweep=sweep,
        medium=medium,
        series=series,
        retarded=options.retarded,
        dipole=tuple(getattr(options, "dipole", (0.0, 0.0, 1.0))),
        average=getattr(options, "average", False),
        grid_ev=grid_ev,
    )


def _sphere(point):
    if point["arc"] is not None:
        return SphereGeometry.from_arc(point["radius"], point["z"], point["arc"])
    return SphereGeometry(point["radius"], point["z"], point["theta"])


def _fidelity(cfg, point):
    omega = point["omega"]
    if cfg.geometry == "free":
        return sigma_free(point["x"], omega)
    if cfg.geometry == "plane":
        return sigma_plane(point["x"], point["z"], omega, cfg.medium)
    return sigma_sphere(
        _sphere(point), omega, cfg.medium, ctl=cfg.series, retarded=cfg.retarded
    )


def _rate(cfg, point):
    omega = point["omega"]
    em = Emitter.from_debye(omega, cfg.dipole)
    if cfg.geometry == "free":
        return rate_result(em, GreenTensor.zeros()).total
    eps = permittivity_at(cfg.medium, omega)
    z = point["z"]
    if cfg.geometry == "plane":
        if cfg.retarded:
            g = g1_planar_coincident_quadrature(z, omega, eps)
        else:
            g = g1_planar_coincident_nonret(z, omega, eps)
    else:
        r = point["radius"] + z
        if cfg.retarded:
            g = g_sphere_coincident(r, omega, point["radius"], eps, cfg.series)
        else:
            g = g_sphere_coincident_nonret(r, omega, point["radius"], eps, cfg.series)
    return rate_result(em, g.imag, average=cfg.average).total


def _shift(cfg, point):
    em = Emitter.from_debye(point["omega"], cfg.dipole)
    if isinstance(cfg.medium, DielectricTable):
        grid = cfg.medium.omega
    else:
        grid = ev_to_angular_frequency(cfg.grid_ev.values())
    z = point["z"]

    def img(w):
        return g1_planar_coincident_nonret(z, w, permittivity_at(cfg.medium, w)).imag

    return frequency_shift(em, img, grid)


def _inspect(cfg, point):
    omega = point["omega"]
    eps = permittivity_at(cfg.medium, omega)
    r_p = fresnel_rp_nonret(eps)
    return (
        eps.real,
        eps.imag,
        r_p.real,
        r_p.imag,
        permittivity_imaginary_axis(cfg.medium, omega),
    )


def _near_field_scale(cfg, point):
    """Largest distance, max(separation, 2 z), a non-retarded formula sees."""
    separation = 0.0
    if cfg.command == "fidelity":
        if cfg.geometry == "plane":
            separation = abs(point["x"])
        else:
            try:
                separation = _sphere(point).chord
            except ValueError:
                return 0.0
    return max(separation, 2 * point["z"])


def _check_near_field(cfg, grid):
    """Warn once per run when the near-field forms are used outside k0 L << 1."""
    if cfg.retarded or cfg.command == "dielectric" or cfg.geometry == "free":
        return
    points = [cfg.at(value) for value in grid]
    worst = max(
        points,
        key=lambda p: wavenumber(p["omega"]) * _near_field_scale(cfg, p),
    )
    nonretarded_parameter(worst["omega"], _near_field_scale(cfg, worst))


def evaluate(cfg):
    """
    Evaluate the requested quantity over the parameter grid.

    Parameters
    ----------
    cfg : :obj:`RunConfig`

    Returns
    -------
    :obj:`pandas.DataFrame`
        ``param`` followed by the result columns of the command, in grid order.
    """
    grid = cfg.values()
    _check_near_field(cfg, grid)
    columns = COLUMNS[cfg.command]

    if cfg.command == "fidelity":

        def generator(value):
            return _fidelity(cfg, cfg.at(value))

        if cfg.sweep is None:
            return pd.DataFrame({"param": grid, "sigma": [generator(grid[0])]})
        curve = scan(
            generator,
            grid,
            parameter=cfg.parameter,
            unit=UNITS[cfg.parameter],
            metadata={
                "command": cfg.label,
                "geometry": cfg.geometry,
                "omega": cfg.omega,
                "medium": getattr(cfg.medium, "name", None),
            },
        )
        if len(curve) == 0:
            # every point failed: re-raise the first error with its exit status
            generator(grid[0])
        return curve.to_dataframe()

    compute = {"rate": _rate, "shift": _shift, "dielectric": _inspect}[cfg.command]
    rows = [np.atleast_1d(compute(cfg, cfg.at(v))) for v in grid]
    frame = pd.DataFrame(np.array(rows, dtype=float), columns=columns)
    frame.insert(0, "param", grid)
    return frame


def _shortest(value):
    return repr(float(value))


def write_csv(frame, header, output=None):
    """
    Write a result table with its comment header.

    Floats use the shortest representation that round-trips, lines end in LF.

    Parameters
    ----------
    frame : :obj:`pandas.DataFrame`
    header : :obj:`str`
        Comment line written first.
    output : :obj:`str`, optional
        Destination path; standard output when None.
    """
    text = frame.apply(lambda col: col.map(_shortest))
    if output is None:
        sys.stdout.write(header + "\n")
        text.to_csv(sys.stdout, index=False, lineterminator="\n")
        return
    with open(output, "w", encoding="utf-8", newline="") as handle:
        handle.write(header + "\n")
        text.to_csv(handle, index=False, lineterminator="\n")


def _setup_logging(debug=False, quiet=False, log_dir=None):
    """Add the run's loguru sinks and return their ids."""
    level = "DEBUG" if debug else "WARNING" if quiet else "INFO"
    sinks = [logger.add(sys.stderr, level=level, format="{level: <8} {message}")]
    if log_dir is not None:
        os.makedirs(log_dir, exist_ok=True)
        isotime = datetime.datetime.now().strftime("%Y-%m-%dT%H%M%S")
        logname = os.path.join(log_dir, f"srfid_{isotime}.log")
        sinks.append(
            logger.add(
                logname,
                level="DEBUG",
                format="{time:YYYY-MM-DDTHH:mm:ss}\t{name: <12}\t{level: <8}\t{message}",
            )
        )
    if not any(isinstance(h, _InterceptHandler) for h in LGR.handlers):
        LGR.addHandler(_InterceptHandler())
    return sinks


@due.dcite(
    references.SUPERRADIANCE_FIDELITY,
    path="srfid",
    description="Superradiance fidelity of emitter pairs near dielectrics",
    version=__version__,
    cite_module=True,
)
def srfid(cfg, output=None):
    """
    Run main workflow of srfid.

    Parameters
    ----------
    cfg : :obj:`RunConfig`
    output : :obj:`str`, optional
        CSV destination; standard output when None.
    """
    LGR.info(f"Currently running srfid version {__version__}")
    LGR.info(f"Computing {cfg.label} over {cfg.values().size} point(s)")
    if cfg.medium is not None:
        LGR.info(f"Medium is {cfg.medium.name}")
    frame = evaluate(cfg)
    write_csv(frame, cfg.header(), output)


def run(argv=None):
    """
    Execute one command line call.

    Parameters
    ----------
    argv : :obj:`list` of :obj:`str`, optional
        Arguments without the program name; ``sys.argv[1:]`` when None.

    Returns
    -------
    :obj:`int`
        0 on success; 2 for usage errors, 3 for missing files and the
        ``exit_code`` of the raised srfid error otherwise.
    """
    parser = _get_parser()
    try:
        options = parser.parse_args(argv)
    except SystemExit as err:
        return err.code

    sinks = _setup_logging(options.debug, options.quiet, options.log_dir)
    try:
        cfg = configure(options, parser)
        srfid(cfg, options.output)
    except SystemExit as err:
        return err.code
    except FileNotFoundError as err:
        logger.error(str(err))
        return EXIT_MISSING_FILE
    except SrfidError as err:
        logger.error(f"{type(err).__name__}: {err}")
        return err.exit_code
    except ValueError as err:
        logger.error(str(err))
        return EXIT_ERROR
    finally:
        for sink in sinks:
            logger.remove(sink)
    return EXIT_OK


def _main(argv=None):
    # the console script owns stderr; run() adds its own sink
    logger.remove()
    sys.exit(run(argv))


if __name__ == "__main__":
    _main(sys.argv[1:])

"""
Copyright 2024, The srfid developers.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
"""
