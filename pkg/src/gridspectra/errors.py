"""Exception types shared across the package."""


class GridspectraError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(GridspectraError, ValueError):
    """An argument violates an operation's stated domain."""


class PreconditionError(GridspectraError):
    """A structural precondition of an operation does not hold."""


class ResourceLimitError(GridspectraError):
    """An exact computation would exceed a configured hard limit."""


class ParseError(GridspectraError, ValueError):
    """A graph file is malformed; the message names the offending line."""


class UnsupportedClaimError(GridspectraError):
    """A claim lies outside what this package certifies (integral spectra only)."""


def error_kind(exc: GridspectraError) -> str:
    """Stable machine-readable tag for an error, used by the service layer."""
    if isinstance(exc, InvalidParameterError):
        return "invalid-parameter"
    if isinstance(exc, PreconditionError):
        return "precondition"
    if isinstance(exc, ResourceLimitError):
        return "resource-limit"
    if isinstance(exc, ParseError):
        return "parse"
    if isinstance(exc, UnsupportedClaimError):
        return "unsupported-claim"
    return "error"
