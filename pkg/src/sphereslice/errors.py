"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input lies outside the domain an operation is defined on."""


class RangeError(ValueError):
    """A transform parameter lies outside its supported range."""


class NumericalError(RuntimeError):
    """A computation produced non-finite or otherwise unusable values."""
