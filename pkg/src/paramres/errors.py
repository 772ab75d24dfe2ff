"""Exception hierarchy shared by all modules.

The harness maps these onto process exit codes, so every failure raised by
the numerical code derives from one of the two roots below.
"""


class ParamresError(Exception):
    """Base class for all package errors."""


class ValidationError(ParamresError, ValueError):
    """An input violates a documented precondition."""


class NumericalError(ParamresError, ArithmeticError):
    """A computation could not produce a finite, meaningful result."""


class SingularityError(NumericalError):
    """A formula hit a vanishing denominator."""


class CoefficientDomainError(NumericalError):
    """A closed-form coefficient would require the square root of a negative number."""


class DivergenceError(NumericalError):
    """The integrated state left the representable range.

    Attributes
    ----------
    t : float
        Simulation time at which the guard tripped.
    """

    def __init__(self, message, t):
        super().__init__(message)
        self.t = t


class IllConditionedError(NumericalError):
    """A fitting window does not determine the model (rank deficiency)."""


class EnvelopeError(NumericalError):
    """The signal has too few extrema to define an envelope."""


class UndefinedRatioError(NumericalError):
    """Damping ratio of a zero-magnitude pole."""
