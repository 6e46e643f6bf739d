import numpy as np

from ..ntt import ModulusChoice, cyclic_parity_arrays


def shift_matrix_product(x: np.ndarray, y: np.ndarray, m: int, force: ModulusChoice | str | None) -> np.ndarray:
    """First ``m`` bits of ``M y`` where row ``i`` of ``M`` is ``x`` rotated right by ``i``.

    ``(M y)_i = sum_j x[(j - i) mod n] y[j]`` is the cyclic convolution of
    ``R(x) = x0, x[n-1], ..., x1`` with ``y``.
    """
    reversed_x = np.roll(x[::-1], 1)
    return cyclic_parity_arrays(reversed_x, y, force)[:m]
