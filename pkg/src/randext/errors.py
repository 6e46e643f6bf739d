"""Exception types raised by the extractor library."""


class ExtractorError(ValueError):
    """Base class for every recoverable error raised by this package."""


class BitFormatError(ExtractorError):
    """Input bytes are malformed for the requested bit format."""


class InsufficientDataError(ExtractorError):
    """Fewer bits are available than the caller asked for."""


class InadmissibleLengthError(ExtractorError):
    """A length is not a prime with 2 as a primitive root."""


class DegenerateInputError(ExtractorError):
    """The two-source input is the all-zero or all-one string."""


class SeedLengthError(ExtractorError):
    """The seed has the wrong number of bits for the extractor."""


class CapacityError(ExtractorError):
    """A transform size exceeds what the chosen modulus supports."""


class UnsupportedModelError(ExtractorError):
    """No parameter formula exists for this (extractor, model) pair."""


class EnumerationLimitError(ExtractorError):
    """An exhaustive computation would exceed its hard size guard."""
