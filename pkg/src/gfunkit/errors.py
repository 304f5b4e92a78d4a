"""Exception taxonomy shared by all modules.

Three broad failure classes matter to callers: bad input (violated
precondition, malformed file), insufficient precision or truncation order
(retryable with a larger parameter), and field arithmetic that the small-field
backend refuses to perform.  The CLI maps them to distinct exit codes.
"""


class GfunkitError(Exception):
    """Base class for all library errors."""


class InputError(GfunkitError):
    """A precondition on the inputs is violated. Names the condition."""


class ConsistencyError(InputError):
    """Input data is internally inconsistent (e.g. genus bookkeeping)."""


class PrecisionError(GfunkitError):
    """An interval computation could not separate from a threshold.

    Callers are expected to retry with a larger ``precision`` argument.
    """


class OrderInsufficientError(GfunkitError):
    """A truncation order is too small for the requested computation."""

    def __init__(self, message, required_order=None):
        super().__init__(message)
        self.required_order = required_order


class UnsupportedFieldError(GfunkitError):
    """Number field arithmetic outside the supported (small) range."""
