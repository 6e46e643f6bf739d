"""Von Neumann deterministic extractor for exchangeable bit pairs."""

from __future__ import annotations

import numpy as np

from ..bits import BitString


def vn_extract(x: BitString) -> BitString:
    """Emit ``x[2j]`` for every pair with ``x[2j] != x[2j+1]``.

    Equal pairs and a trailing odd bit produce nothing, so the result may be
    empty.
    """
    arr = x.to_array()
    pairs = arr[: len(arr) // 2 * 2].reshape(-1, 2)
    return BitString.from_array(pairs[pairs[:, 0] != pairs[:, 1], 0].astype(np.uint8))
