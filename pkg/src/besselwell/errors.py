"""Exception and warning types raised across the package."""


class BesselWellError(Exception):
    """Base class for computation-domain failures (CLI exit code 1)."""


class DomainError(BesselWellError, ValueError):
    """Argument outside the domain a routine supports."""


class RegimeError(BesselWellError, ValueError):
    """Energy outside the regime where the closed-form formulas apply."""


class PoleError(BesselWellError, ZeroDivisionError):
    """Evaluation at (or numerically indistinguishable from) a pole."""


class UnderflowSignal(BesselWellError, ArithmeticError):
    """Result scale falls below the smallest normal double."""


class OverflowSignal(BesselWellError, ArithmeticError):
    """Integrated solution grew past the representable range."""


class NoSignChangeError(BesselWellError):
    """A bracketing root search was given an interval without a sign change."""


class ScanExhaustedError(BesselWellError):
    """Fewer roots than requested were found below the energy ceiling.

    The roots that were found are attached as ``levels``.
    """

    def __init__(self, message, levels=()):
        super().__init__(message)
        self.levels = list(levels)


class IncompatibleLevelError(BesselWellError, ValueError):
    """An energy level was paired with a potential it does not belong to."""


class ResolutionError(BesselWellError):
    """Grid step too coarse for the local wavelength."""


class LossOfAccuracyWarning(RuntimeWarning):
    """Internal cancellation exceeded the accuracy budget."""


class GridResolutionWarning(RuntimeWarning):
    """Grid step approaches the local oscillation wavelength."""
