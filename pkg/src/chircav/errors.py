"""Exception types shared across the package."""


class ChircavError(Exception):
    """Base class for all chircav errors."""


class InvalidParams(ChircavError):
    """A model parameter violates its constraints."""

    def __init__(self, field: str, reason: str):
        super().__init__(f"invalid parameter {field!r}: {reason}")
        self.field = field
        self.reason = reason


class ConfigError(ChircavError):
    """A parameter file or run configuration could not be used."""


class DegenerateDenominator(ChircavError):
    """A closed-form denominator is numerically zero (pathological input)."""


class DegenerateConfig(ChircavError):
    """The measurement configuration carries no enantiomeric signal."""


class EmptySpecies(ChircavError):
    """An excitation fraction was requested for a species with zero molecules."""


class OutOfRange(ChircavError):
    """A measured intensity implies an enantiomeric excess outside [-1, 1]."""


class NoCrossing(ChircavError):
    """A measured intensity exceeds the calibration curve everywhere."""


class NoConvergence(ChircavError):
    """The steady-state iteration failed; carries the partial report."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class SingularJacobian(ChircavError):
    """The Newton linear solve failed (singular or non-finite Jacobian)."""


class StiffnessFailure(ChircavError):
    """The time integrator's step size underflowed."""

    def __init__(self, message: str, time: float, state=None):
        super().__init__(message)
        self.time = time
        self.state = state


class SweepAborted(ChircavError):
    """More than the tolerated fraction of sweep points failed to converge."""
