"""Exception types shared across the package."""


class ResourceLimitError(Exception):
    """Raised when an operation would exceed its configured size cap.

    The CLI maps this to exit code 3.  Domain errors (bad arguments,
    malformed graphs) raise :class:`ValueError` instead.
    """
