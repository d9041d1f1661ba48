"""Exception types shared across the package."""


class PushforwardError(Exception):
    """Base class for all errors raised by this package."""


class ContextMismatchError(PushforwardError):
    """Operands belong to different ring contexts (or have wrong arity)."""


class PolynomialParseError(PushforwardError):
    """Text does not conform to the polynomial grammar."""


class ProblemFileError(PushforwardError):
    """A problem file is malformed or inconsistent."""


class NotFiniteMapError(PushforwardError):
    """The restricted map germ is not finite (infinite fibre dimension)."""


class DegreeCapError(PushforwardError):
    """No presentation row was found up to the configured ansatz degree."""

    def __init__(self, row, last_degree):
        super().__init__(
            f"row {row}: no solvable ansatz up to degree {last_degree}"
        )
        self.row = row
        self.last_degree = last_degree


class TimeLimitError(PushforwardError):
    """The configured wall-clock budget was exhausted."""


class UnsupportedConfigurationError(PushforwardError):
    """Input shape is outside the supported patterns."""


class ExactDivisionError(PushforwardError):
    """A division that must be exact left a remainder."""
