"""Randomness extractors with exact parameter calculation.

Seeded and two-source extractors (Circulant, Dodis et al., Toeplitz,
Trevisan) plus the deterministic Von Neumann extractor.  The matrix
extractors run on an exact number-theoretic transform.  Brute-force
reference implementations live in :mod:`randext.oracles` and are not
re-exported here.
"""

from .bits import BitFormat, BitString, bits, pad_seed, parse_bits, serialize_bits, shorten_input
from .errors import (
    BitFormatError,
    CapacityError,
    DegenerateInputError,
    EnumerationLimitError,
    ExtractorError,
    InadmissibleLengthError,
    InsufficientDataError,
    SeedLengthError,
    UnsupportedModelError,
)
from .extractors import circulant_extract, dodis_extract, toeplitz_extract, vn_extract
from .ntt import ModulusChoice, build_plan, cyclic_convolve_mod2, ntt_forward, ntt_inverse
from .params import (
    Direction,
    ExtractorSpec,
    Kind,
    SecurityModel,
    calc_output_length,
    calc_seed_length,
    compose_errors,
    is_na_prime,
    lift_markov,
    lift_two_source_error,
    na_search,
    output_bound,
    suggest_extractor,
)
from .trevisan import TrevisanParams, compute_params, trevisan_extract

__version__ = "0.1.0"

__all__ = [
    "BitFormat",
    "BitFormatError",
    "BitString",
    "CapacityError",
    "DegenerateInputError",
    "Direction",
    "EnumerationLimitError",
    "ExtractorError",
    "ExtractorSpec",
    "InadmissibleLengthError",
    "InsufficientDataError",
    "Kind",
    "ModulusChoice",
    "SecurityModel",
    "SeedLengthError",
    "TrevisanParams",
    "UnsupportedModelError",
    "bits",
    "build_plan",
    "calc_output_length",
    "calc_seed_length",
    "circulant_extract",
    "compose_errors",
    "compute_params",
    "cyclic_convolve_mod2",
    "dodis_extract",
    "is_na_prime",
    "lift_markov",
    "lift_two_source_error",
    "na_search",
    "ntt_forward",
    "ntt_inverse",
    "output_bound",
    "pad_seed",
    "parse_bits",
    "serialize_bits",
    "shorten_input",
    "suggest_extractor",
    "toeplitz_extract",
    "trevisan_extract",
    "vn_extract",
]
