"""Exception hierarchy shared across the package."""

from __future__ import annotations


class QesError(Exception):
    """Base class for package-specific failures."""


class DomainError(QesError, ValueError):
    """A math primitive was evaluated outside its real domain."""

    def __init__(self, primitive: str, value: float, detail: str = ""):
        self.primitive = primitive
        self.value = value
        msg = f"{primitive} undefined at {value!r}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class SingularityError(DomainError):
    """The evaluation point sits on a pole of the requested function."""


class RepresentationError(QesError, ValueError):
    """Representation label outside the bound-state range k > 1/2."""


class ConstraintViolation(QesError, ValueError):
    """Parameters violate a precondition of the requested operation."""


class EvaluationError(QesError, ArithmeticError):
    """A numeric evaluation produced a non-finite value."""


class DivergenceSuspected(QesError, RuntimeError):
    """Adaptive integration did not converge within its panel budget."""

    def __init__(self, message: str, partial_value: float,
                 error_estimate: float, subdivisions: int):
        super().__init__(message)
        self.partial_value = partial_value
        self.error_estimate = error_estimate
        self.subdivisions = subdivisions


class InconsistencyError(QesError, RuntimeError):
    """Two internally redundant computations disagreed."""


class CalibrationError(QesError, RuntimeError):
    """No candidate coefficient convention matched the derivation chain."""

    def __init__(self, message: str, residuals: dict | None = None):
        super().__init__(message)
        self.residuals = dict(residuals) if residuals else {}
