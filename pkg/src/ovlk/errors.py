"""Exception hierarchy for ovlk.

Each class carries an ``exit_code`` so the command-line front end can map
failures to process status without a lookup table.
"""


class OVLError(Exception):
    """Base class for every error raised by ovlk."""

    exit_code = 1


class ParameterError(OVLError, ValueError):
    """Invalid argument or model parameter (non-finite, non-positive scale...)."""

    exit_code = 2


class DomainError(ParameterError):
    """Argument outside the mathematical domain of a function."""


class DataError(OVLError, ValueError):
    """Problem with observed data."""

    exit_code = 3


class DegenerateSample(DataError):
    """Sample has zero variance, so the fitted normal density is undefined."""

    def __init__(self, message, repetition=None):
        super().__init__(message)
        self.repetition = repetition


class InsufficientData(DataError):
    """Sample too small for the requested variance convention."""


class ConfigError(DataError):
    """Simulation config does not validate against the schema."""


class NumericalError(OVLError, ArithmeticError):
    """Numerical procedure failed."""

    exit_code = 4


class NonFiniteEvaluation(NumericalError):
    """Integrand returned inf or nan at a quadrature node."""


class NoConvergence(NumericalError):
    """Grid refinement did not reach the requested tolerance."""


class OracleFailure(NoConvergence):
    """Reference value for a simulation scenario could not be computed."""


class DegenerateAlpha(NumericalError):
    """Softplus sum underflowed to zero while estimating the transform shape."""


class ZeroMSE(NumericalError):
    """Candidate MSE is zero while the comparator MSE is not."""
