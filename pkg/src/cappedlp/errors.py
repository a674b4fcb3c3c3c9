"""Exception types shared across the package."""


class InputError(ValueError):
    """Inputs have inconsistent shapes or invalid parameter values."""


class ProblemFormatError(InputError):
    """A problem document failed validation.

    The message always starts with the path of the offending field, e.g.
    ``datafit.A: rows must have equal length``.
    """

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class CapacityError(RuntimeError):
    """A requested enumeration exceeds the supported problem size."""


class UnsupportedConfigError(ValueError):
    """The operation does not support the requested exponent or data-fit kind."""
