class BitHilbertError(Exception):
    """Base exception for all bit-string ensemble errors."""

    def __init__(self, message):
        super().__init__(message)
        self.message = message


class UsageError(BitHilbertError):
    """Raised when inputs violate a precondition (CLI exit code 2)."""


class VerdictError(BitHilbertError):
    """Raised when a well-formed run cannot produce its result (CLI exit code 1)."""


class ShapeError(UsageError):
    """Raised on length, quarter or tree size mismatches."""


class DomainError(UsageError):
    """Raised when a parameter lies outside its admissible range."""


class UnsupportedSymbolError(UsageError):
    """Raised when an operator meets a NULL symbol it cannot act on."""


class ConfigError(UsageError):
    """Raised on invalid experiment or application configuration."""


class CodecError(UsageError):
    """Raised when a serialized bit string cannot be decoded."""


class UndefinedCorrelationError(VerdictError):
    """Raised when two strings share no position where both bits are non-null."""


class UndefinedStatisticsError(VerdictError):
    """Raised when a string has no non-null bit."""


class NoCandidateError(VerdictError):
    """Raised when no exact setting satisfies a sampling constraint."""


class InsufficientPrecisionError(VerdictError):
    """Raised when a real carries too few digits for rational reconstruction."""
