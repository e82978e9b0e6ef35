"""Exception hierarchy shared by all computational modules.

The CLI prints ``type(err).__name__`` verbatim, so class names are part of
the public interface.
"""


class ScatteringError(Exception):
    """Base class for every error raised by the package."""


# flux_geometry
class DuplicateFlux(ScatteringError, ValueError):
    pass


class NonFinite(ScatteringError, ValueError):
    pass


class TooCloseToFlux(ScatteringError, ValueError):
    pass


class IndexOutOfRange(ScatteringError, IndexError):
    pass


# berry_phase
class PathThroughFlux(ScatteringError, ValueError):
    pass


class PathNotClosed(ScatteringError, ValueError):
    pass


class InvalidPath(ScatteringError, ValueError):
    pass


class ToleranceNotReached(ScatteringError, ArithmeticError):
    pass


# partial_waves
class OutOfSupportedRange(ScatteringError, ValueError):
    pass


class TruncationInsufficient(ScatteringError, ValueError):
    pass


class ForwardRegion(ScatteringError, ValueError):
    pass


class RadiusTooSmall(ScatteringError, ValueError):
    pass


# momentum_contour
class QuadratureFailure(ScatteringError, ArithmeticError):
    pass


class TailNotConverged(ScatteringError, ArithmeticError):
    pass


# experiment
class NotCoprime(ScatteringError, ValueError):
    pass


class InvalidGeometry(ScatteringError, ValueError):
    pass
