"""Exception types shared across the package."""


class BlaschkeLabError(Exception):
    """Base class for all package-specific errors."""


class DomainError(BlaschkeLabError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class PrecisionExhaustedError(BlaschkeLabError):
    """The precision cap was reached before the target error was met."""


class GridTooSmallError(BlaschkeLabError, ValueError):
    """An FFT grid is too small for the requested coefficient range/accuracy."""


class QuadratureError(BlaschkeLabError):
    """Adaptive quadrature hit its panel budget without converging."""


class RegionOrderError(BlaschkeLabError, ValueError):
    """Region boundaries are not ordered (n too small for the chosen alpha)."""


class InsufficientRangeError(BlaschkeLabError):
    """The computed coefficient range is too short to certify a norm."""


class EmptyWindowError(BlaschkeLabError, ValueError):
    """A k-window is empty at this n."""
