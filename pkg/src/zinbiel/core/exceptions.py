"""Custom exceptions for the Zinbiel toolkit."""

from typing import Optional

EX_OK = 0
EX_USAGE = 64
EX_DATAERR = 65
EX_SOFTWARE = 70


class ZinbielError(Exception):
    """Base exception for the Zinbiel toolkit."""

    exit_code: int = EX_DATAERR

    def __init__(self, message: str, cause: Optional[Exception] = None) -> None:
        """Initialize exception.

        Args:
            message: Error message
            cause: Optional underlying exception
        """
        super().__init__(message)
        self.message = message
        self.cause = cause


class ConfigurationError(ZinbielError):
    """Invalid run configuration."""

    exit_code = EX_USAGE


class SchemaError(ZinbielError):
    """Malformed input document or scalar text."""

    exit_code = EX_USAGE


class FormatVersionError(SchemaError):
    """Input document written by an incompatible format version."""


class FileError(ZinbielError):
    """File operation errors."""

    exit_code = EX_USAGE


class ParameterError(ZinbielError):
    """Family parameters outside the admissible range."""


class ScalarError(ZinbielError):
    """Scalar domain errors (negative binomial top, unbound parameter, 1/0)."""


class DimensionError(ZinbielError):
    """Vector or matrix shape mismatch."""


class NotNilpotentError(ZinbielError):
    """Operation requires a nilpotent algebra or operator."""


class UnsupportedScopeError(ZinbielError):
    """Input lies outside what the searchers handle."""


class BaseChangeError(ZinbielError):
    """Degree-1 base change is singular or does not extend to a basis."""


class InvariantError(ZinbielError):
    """An internal invariant was violated."""

    exit_code = EX_SOFTWARE
