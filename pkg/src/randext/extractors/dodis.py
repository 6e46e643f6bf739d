"""Two-source extractor built from cyclic-shift matrices."""

from __future__ import annotations

from ..bits import BitString
from ..errors import DegenerateInputError, ExtractorError, InadmissibleLengthError, SeedLengthError
from ..ntt import ModulusChoice
from ..params import is_na_prime
from ._shift import shift_matrix_product


def dodis_extract(x: BitString, y: BitString, m: int, force: ModulusChoice | str | None = None) -> BitString:
    """Inner products ``(A_i x) . y`` for the first ``m`` right cyclic shifts ``A_i``.

    Both inputs have the same prime length ``n`` with 2 as a primitive root,
    and ``x`` may not be constant.
    """
    n = len(x)
    if len(y) != n:
        raise SeedLengthError(f"second input has {len(y)} bits, expected {n}")
    if not is_na_prime(n):
        raise InadmissibleLengthError(f"{n} is not a prime with primitive root 2")
    if not 1 <= m <= n:
        raise ExtractorError(f"output length {m} outside [1, {n}]")
    xa = x.to_array()
    ones = int(xa.sum())
    if ones == 0 or ones == n:
        raise DegenerateInputError("input is the all-zero or all-one string")
    return BitString.from_array(shift_matrix_product(xa, y.to_array(), m, force))
