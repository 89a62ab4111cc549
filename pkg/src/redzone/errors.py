"""Exception and warning types shared across the package."""


class RedzoneError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(RedzoneError, ValueError):
    """An argument is outside the mathematical domain of an operation."""


class ValidationError(RedzoneError, ValueError):
    """A model, configuration, or document violates its construction contract."""


class StateError(RedzoneError, RuntimeError):
    """An operation was applied to an object in the wrong state."""


class CompositionError(RedzoneError, ArithmeticError):
    """A redundancy composition is undefined (e.g. all units already failed)."""


class ValidationWarning(UserWarning):
    """A configuration is legal but internally inconsistent or unusual."""
