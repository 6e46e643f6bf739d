"""Seeded extractor from the circulant matrix of the zero-padded input."""

from __future__ import annotations

import numpy as np

from ..bits import BitString
from ..errors import ExtractorError, InadmissibleLengthError, SeedLengthError
from ..ntt import ModulusChoice
from ..params import is_na_prime
from ._shift import shift_matrix_product


def circulant_extract(x: BitString, y: BitString, m: int, force: ModulusChoice | str | None = None) -> BitString:
    """First ``m`` bits of ``circ([x, 0]) @ y`` over GF(2).

    ``y`` must have ``n = len(x) + 1`` bits with ``n`` a prime that has 2 as
    a primitive root, and ``1 <= m <= n - 1``.  The result is a two-universal
    hash of ``x`` indexed by ``y``.
    """
    n = len(x) + 1
    if len(y) != n:
        raise SeedLengthError(f"seed has {len(y)} bits, expected {n}")
    if not is_na_prime(n):
        raise InadmissibleLengthError(f"{n} is not a prime with primitive root 2")
    if not 1 <= m <= n - 1:
        raise ExtractorError(f"output length {m} outside [1, {n - 1}]")
    padded = np.zeros(n, dtype=np.uint8)
    padded[: n - 1] = x.to_array()
    return BitString.from_array(shift_matrix_product(padded, y.to_array(), m, force))
