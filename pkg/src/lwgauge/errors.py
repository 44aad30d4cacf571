"""Exception and warning types shared across the package."""


class LWGaugeError(Exception):
    """Base class for all library errors."""


class ValidationError(LWGaugeError, ValueError):
    """Invalid trajectory, configuration or input data."""


class NumericalError(LWGaugeError, ArithmeticError):
    """A numerical procedure failed to deliver a trustworthy result."""


class NonConvergence(NumericalError):
    pass


class ObserverOnCharge(NumericalError):
    """The observation point coincides with the charge."""


class ChargeCrossesObserver(NumericalError):
    """The orbit passes (numerically) through the observation point."""


class GridTooSmall(ValidationError):
    pass


class NodeOnSource(ValidationError):
    pass


class SignChange(NumericalError):
    """A sequence meant for log-log fitting changes sign."""


class DegenerateInput(NumericalError):
    pass


class MissingColumn(ValidationError):
    pass


class TooFewRows(ValidationError):
    pass


class BoundaryLeakage(UserWarning):
    """Field does not decay inside the grid; the free-space convolution is biased."""
