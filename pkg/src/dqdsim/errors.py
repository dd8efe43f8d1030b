"""Exception types raised by the solvers, fitters and the CLI."""


class DqdError(Exception):
    """Base class for all dqdsim errors."""


class ConfigError(DqdError):
    """Invalid or unknown configuration input."""


class DomainTooSmallError(DqdError):
    """Grid domain does not leave enough padding around the wells."""


class NoBoundStateError(DqdError):
    """The potential holds no bound state (ground energy >= 0)."""


class UnboundDotError(DqdError):
    """A candidate well depth during calibration yields no bound state."""


class BasisMismatchError(DqdError):
    """Lateral basis was built at a different magnetic field."""


class NotHermitianError(DqdError):
    """Matrix handed to the eigensolver is not Hermitian."""


class AmbiguousContinuationError(DqdError):
    """Adiabatic labeling overlap fell below threshold; reduce the field step."""


class MissingLabelError(DqdError):
    """A spectrum lacks the level label required to build emission lines."""


class OutOfRangeError(DqdError):
    """Requested gap lies outside the range of the model curve."""


class NoConvergenceError(DqdError):
    """Iterative calibration or fit failed to reach its tolerance."""


class SingularFitError(DqdError):
    """Fit input is degenerate (coincident or collinear points)."""
