"""Exception hierarchy shared across the package.

Domain errors signal inadmissible wave parameters (the caller asked for a
wave that does not exist); numerical errors signal that a computation that
should have succeeded did not meet its accuracy gate.
"""


class DomainError(ValueError):
    """Raised when parameters fall outside the admissible region."""


class NoCnoidalWaveError(DomainError):
    """Raised when the quadrature cubic admits no cnoidal-wave branch."""


class NumericalError(RuntimeError):
    """Raised when a numerical routine fails its internal quality gate."""


class IntegratorFailureError(NumericalError):
    """ODE integration lost the Wronskian (or failed to converge)."""


class EdgeMismatchError(NumericalError):
    """A band edge failed its monodromy-trace cross validation."""

    def __init__(self, message, edge_value, trace):
        super().__init__(message)
        self.edge_value = edge_value
        self.trace = trace


class InconsistencyError(NumericalError):
    """Two independent classification routes disagree."""


class InsufficientDataError(ValueError):
    """Not enough resolved data to perform the requested analysis."""


class LogicError(ValueError):
    """The request contradicts an established classification."""
