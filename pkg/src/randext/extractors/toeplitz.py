"""Toeplitz-hashing seeded extractor."""

from __future__ import annotations

import numpy as np

from ..bits import BitString
from ..errors import ExtractorError, SeedLengthError
from ..ntt import ModulusChoice, convolve_parity, select_modulus


def toeplitz_plan_size(n: int, m: int) -> int:
    """Smallest power of two that holds the ``(n + m - 1)``-point embedding."""
    return 1 << (n + m - 2).bit_length() if n + m > 2 else 1


def toeplitz_extract(x: BitString, y: BitString, m: int, force: ModulusChoice | str | None = None) -> BitString:
    """``toep(y) @ x`` over GF(2) with entry ``(i, j) = y[(i - j) mod (n + m - 1)]``.

    The first column of the matrix is ``y[0..m-1]`` and the first row is
    ``y0, y[n+m-2], ..., y[m]``.
    """
    n = len(x)
    if n < 1 or m < 1:
        raise ExtractorError("input and output lengths must be positive")
    if len(y) != n + m - 1:
        raise SeedLengthError(f"seed has {len(y)} bits, expected n + m - 1 = {n + m - 1}")
    size = toeplitz_plan_size(n, m)
    choice = select_modulus(n, force)
    if force is None and size > 1 << choice.max_log_size:
        choice = ModulusChoice.BIG
    ya = y.to_array()
    # circulant column wraps: y[0..m-1] at the front, y[m..] at the tail
    column = np.zeros(size, dtype=np.uint8)
    column[:m] = ya[:m]
    if n > 1:
        column[size - n + 1 :] = ya[m:]
    return BitString.from_array(convolve_parity(x.to_array(), column, size, choice)[:m])
