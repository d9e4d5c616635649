"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Raised when an input violates a documented invariant.

    The message names the offending field or player so CLI callers can
    surface it verbatim.
    """
