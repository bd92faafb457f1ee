"""Exceptions raised by srfid.

Every error subclasses :class:`ValueError`, so code that only guards against bad
input values keeps working.
"""


class SrfidError(ValueError):
    """Base class of all srfid errors."""

    exit_code = 1


class DielectricFormatError(SrfidError):
    """A dielectric data file could not be parsed or violates its invariants."""

    exit_code = 7

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DielectricRangeError(SrfidError):
    """A frequency lies outside the sampled range of a dielectric table."""

    exit_code = 4


class PoleError(SrfidError):
    """A response function is evaluated exactly on one of its poles."""

    exit_code = 6


class SpecialFunctionOverflowError(SrfidError):
    """Order or argument outside the supported special-function envelope."""

    exit_code = 6


class SeriesConvergenceError(SrfidError):
    """A multipole series did not reach its tolerance within the order cap."""

    exit_code = 5

    def __init__(self, message, tail=None, l_max=None):
        self.tail = tail
        self.l_max = l_max
        super().__init__(message)


class QuadratureError(SrfidError):
    """Adaptive quadrature failed to reach the requested accuracy."""

    exit_code = 5

    def __init__(self, message, abserr=None):
        self.abserr = abserr
        super().__init__(message)


class CoverageError(SrfidError):
    """A frequency grid does not cover the support of the integrand."""

    exit_code = 6


class DegenerateDensityError(SrfidError):
    """The local mode density in a fidelity denominator vanishes."""

    exit_code = 6
