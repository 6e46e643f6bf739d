"""Brute-force reference implementations used to validate the fast paths.

Nothing here touches the transform engine, the parameter engine or the
Trevisan package: matrices are written out literally and every
distribution quantity is an exact ``Fraction``.  These routines are test
support and are deliberately not exported from the package root.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .bits import BitString
from .errors import EnumerationLimitError

ENUMERATION_LIMIT = 26

MATRIX_KINDS = ("circulant", "dodis", "toeplitz")


def _bits(v) -> list[int]:
    if isinstance(v, BitString):
        return v.to_list()
    return [int(b) & 1 for b in v]


def naive_convolve(u: Sequence[int], v: Sequence[int]) -> list[int]:
    """Integer cyclic convolution ``w_i = sum_j u[(i-j) mod n] v[j]`` as a direct sum.

    Row ``i`` of the window below is ``u`` rotated so that its dot product
    with reversed ``v`` is exactly that sum; no transform is involved.
    """
    u = np.asarray(list(u), dtype=np.float64)
    v = np.asarray(list(v), dtype=np.float64)
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    n = len(u)
    if n == 0:
        return []
    if n * float(np.abs(u).max()) * float(np.abs(v).max()) >= 2.0**53:
        raise ValueError("entries too large for an exact float64 sum")
    window = sliding_window_view(np.concatenate([u, u]), n)[1 : n + 1]
    return np.rint(window @ v[::-1]).astype(np.int64).tolist()


# ------------------------------------------------------------------ matrices


def seed_length(kind: str, n1: int, m: int) -> int:
    if kind == "circulant":
        return n1 + 1
    if kind == "dodis":
        return n1
    if kind == "toeplitz":
        return n1 + m - 1
    raise ValueError(f"no literal matrix for {kind!r}")


def shift_matrix(x: Sequence[int], rows: int) -> list[list[int]]:
    """Rows ``0..rows-1`` of the matrix whose row ``i`` is ``x`` rotated right by ``i``."""
    n = len(x)
    return [[x[(j - i) % n] for j in range(n)] for i in range(rows)]


def toeplitz_matrix(y: Sequence[int], n: int, m: int) -> list[list[int]]:
    """``m x n`` matrix with first column ``y_0..y_{m-1}`` and first row ``y_0, y_{n+m-2}, ..``."""
    size = n + m - 1
    if len(y) != size:
        raise ValueError(f"toeplitz seed must have {size} bits")
    return [[y[(i - j) % size] for j in range(n)] for i in range(m)]


def _matvec(mat: list[list[int]], vec: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, vec)) % 2 for row in mat]


def naive_extract(kind: str, x, y, m: int) -> BitString:
    """Literal matrix-vector product mod 2 for the matrix extractors."""
    x, y = _bits(x), _bits(y)
    if m < 0:
        raise ValueError("m must be non-negative")
    if kind == "circulant":
        if len(y) != len(x) + 1 or m > len(x):
            raise ValueError("circulant needs |y| = |x| + 1 and m <= |x|")
        return BitString.from_bits(_matvec(shift_matrix(x + [0], m), y))
    if kind == "dodis":
        if len(y) != len(x) or m > len(x):
            raise ValueError("dodis needs |y| = |x| and m <= |x|")
        return BitString.from_bits(_matvec(shift_matrix(x, m), y))
    if kind == "toeplitz":
        return BitString.from_bits(_matvec(toeplitz_matrix(y, len(x), m), x))
    raise ValueError(f"no literal matrix for {kind!r}")


# -------------------------------------------------------------- enumeration


def _all_strings(n: int) -> np.ndarray:
    """Every ``n``-bit string as a row; row ``k`` has bit ``i`` = bit ``i`` of ``k``."""
    k = np.arange(1 << n, dtype=np.int64)
    return ((k[:, None] >> np.arange(n)) & 1).astype(np.int64)


def _as_row(x, n1: int) -> list[int]:
    if isinstance(x, (int, np.integer)):
        return [(int(x) >> i) & 1 for i in range(n1)]
    row = _bits(x)
    if len(row) != n1:
        raise ValueError(f"source point has {len(row)} bits, expected {n1}")
    return row


def _output_codes(kind: str, inputs: np.ndarray, seeds: np.ndarray, m: int) -> np.ndarray:
    """Outputs for every (input, seed) pair, packed as ints; shape ``(inputs, seeds)``."""
    n1 = inputs.shape[1]
    rows = np.arange(m)[:, None]
    weights = 1 << np.arange(m, dtype=np.int64)
    if kind in ("circulant", "dodis"):
        if kind == "circulant":
            inputs = np.hstack([inputs, np.zeros((len(inputs), 1), dtype=np.int64)])
        n = inputs.shape[1]
        idx = (np.arange(n)[None, :] - rows) % n
        mats = inputs[:, idx]  # (inputs, m, n)
        prods = np.einsum("amn,sn->asm", mats, seeds)
    elif kind == "toeplitz":
        size = n1 + m - 1
        idx = (rows - np.arange(n1)[None, :]) % size
        mats = seeds[:, idx]  # (seeds, m, n1)
        prods = np.einsum("smn,an->asm", mats, inputs)
    else:
        raise ValueError(f"no literal matrix for {kind!r}")
    return (prods % 2) @ weights


def _normalise(source: Mapping, n1: int) -> tuple[np.ndarray, list[Fraction]]:
    points, probs = [], []
    for x, p in source.items():
        p = Fraction(p)
        if p < 0:
            raise ValueError("negative probability")
        if p:
            points.append(_as_row(x, n1))
            probs.append(p)
    if sum(probs) != 1:
        raise ValueError("source probabilities must sum to 1")
    return np.array(points, dtype=np.int64).reshape(len(points), n1), probs


def _guard(bits_needed: int) -> None:
    if bits_needed > ENUMERATION_LIMIT:
        raise EnumerationLimitError(
            f"enumeration over 2**{bits_needed} states exceeds the 2**{ENUMERATION_LIMIT} limit")


def flat_source(support: Sequence, n1: int) -> dict:
    """Uniform distribution on ``support`` (ints or bit sequences)."""
    support = list(support)
    if not support:
        raise ValueError("empty support")
    keys = [tuple(_as_row(x, n1)) for x in support]
    if len(set(keys)) != len(keys):
        raise ValueError("repeated support points")
    return {k: Fraction(1, len(keys)) for k in keys}


def statistical_distance_strong(kind: str, source: Mapping, n1: int, m: int) -> Fraction:
    """Exact ``Delta([Ext(X,Y), Y], [U_m, Y])`` for uniform ``Y``.

    Parameters
    ----------
    kind : str
        ``"circulant"``, ``"dodis"`` or ``"toeplitz"``.
    source : mapping
        Input point (int with bit ``i`` = ``x_i``, or bit sequence) to probability.
    n1 : int
        Input length; the seed length follows from ``kind``.
    m : int
        Output length.
    """
    if m == 0:
        return Fraction(0)
    n2 = seed_length(kind, n1, m)
    _guard(n1 + n2)
    inputs, probs = _normalise(source, n1)
    denom = math.lcm(*(p.denominator for p in probs))
    weights = np.array([int(p * denom) for p in probs], dtype=np.int64)
    if denom.bit_length() + m > 62:
        raise EnumerationLimitError("probability denominators too large for exact int64 sums")
    seeds = _all_strings(n2)
    total = 0
    # Delta = 1/(2 * 2**n2) * sum_y sum_z |P(z|y) - 2**-m|; accumulate in units of 1/(denom * 2**m)
    for start in range(0, len(seeds), 1024):
        chunk = seeds[start : start + 1024]
        codes = _output_codes(kind, inputs, chunk, m)
        cells = codes + (np.arange(len(chunk)) << m)[None, :]
        hist = np.zeros(len(chunk) << m, dtype=np.int64)
        np.add.at(hist, cells.ravel(), np.repeat(weights, len(chunk)))
        total += int(np.abs(hist * (1 << m) - denom).sum())
    return Fraction(total, 2 * denom * (1 << m) * (1 << n2))


def collision_probability(kind: str, x, x_tilde, m: int) -> Fraction:
    """Exact ``Pr_Y[Ext(x, Y) = Ext(x~, Y)]`` over uniform seeds."""
    x, x_tilde = _bits(x), _bits(x_tilde)
    if x == x_tilde:
        raise ValueError("collision probability needs distinct inputs")
    if len(x) != len(x_tilde):
        raise ValueError("inputs differ in length")
    if m == 0:
        return Fraction(1)
    n1 = len(x)
    n2 = seed_length(kind, n1, m)
    _guard(n2)
    codes = _output_codes(kind, np.array([x, x_tilde], dtype=np.int64), _all_strings(n2), m)
    return Fraction(int((codes[0] == codes[1]).sum()), 1 << n2)


# ------------------------------------------------------------------ trevisan


def _is_prime_trial(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, math.isqrt(n) + 1))


def _poly_divmod(a: int, b: int) -> tuple[int, int]:
    q = 0
    db = b.bit_length() - 1
    while a and a.bit_length() - 1 >= db:
        shift = a.bit_length() - 1 - db
        q |= 1 << shift
        a ^= b << shift
    return q, a


def _is_irreducible_trial(f: int) -> bool:
    deg = f.bit_length() - 1
    return all(_poly_divmod(f, g)[1] for d in range(1, deg // 2 + 1) for g in range(1 << d, 1 << (d + 1)))


def _poly_mulmod(a: int, b: int, f: int) -> int:
    prod = 0
    i = 0
    while b >> i:
        if (b >> i) & 1:
            prod ^= a << i
        i += 1
    return _poly_divmod(prod, f)[1]


def naive_trevisan_params(n: int, m: int, eps: Fraction, poly: int | None = None) -> dict:
    """Parameter set recomputed with integer arithmetic only.

    The irreducible modulus is found by trial division unless ``poly`` is
    supplied, which wide fields need because that search is exponential.
    """
    eps = Fraction(eps)
    # l = ceil(log2 n + 2 log2(2m/eps)) = least L with 2**L >= n * (2m/eps)**2
    target = n * (2 * m / eps) ** 2
    l = 0
    while Fraction(2) ** l < target:
        l += 1
    t = 2 * l
    while not _is_prime_trial(t):
        t += 1
    if poly is not None:
        if poly.bit_length() - 1 != l:
            raise ValueError(f"modulus must have degree {l}")
        f = poly
    else:
        f = (1 << l) + 1
        while not _is_irreducible_trial(f):
            f += 2
    return {"l": l, "t": t, "f": f, "s": -(-n // l)}


def naive_block_sets(m: int, t: int) -> list[list[int]]:
    """Explicit sets of the block design: polynomial graphs over GF(t) per block."""
    sizes, v = [], m
    while v > t:
        take = math.ceil(v / (2 * math.e))
        sizes.append(take)
        v -= take
    if v:
        sizes.append(v)
    sets = []
    for block, size in enumerate(sizes):
        c = 1
        while t**c < size:
            c += 1
        for i in range(size):
            coeffs = [(i // t**k) % t for k in range(c)]
            graph = []
            for alpha in range(t):
                value = sum(coef * alpha**k for k, coef in enumerate(coeffs)) % t
                graph.append(block * t * t + alpha * t + value)
            sets.append(sorted(graph))
    return sets


def naive_trevisan(x, y, n: int, m: int, eps, poly: int | None = None) -> BitString:
    """Trevisan output via explicit sets and the power sum ``sum_i x_i a1**(s-i)``."""
    x, y = _bits(x), _bits(y)
    par = naive_trevisan_params(n, m, Fraction(eps), poly)
    l, t, f, s = par["l"], par["t"], par["f"], par["s"]
    padded = x + [0] * (s * l - n)
    # first bit of a chunk is the highest-degree coefficient
    elems = [int("".join(map(str, padded[k * l : (k + 1) * l])), 2) for k in range(s)]
    out = []
    for positions in naive_block_sets(m, t):
        chunk = [y[p] for p in positions]
        a1 = int("".join(map(str, chunk[:l])), 2)
        a2 = int("".join(map(str, chunk[l : 2 * l])), 2)
        total = 0
        for i, xi in enumerate(elems, start=1):
            power = 1
            for _ in range(s - i):
                power = _poly_mulmod(power, a1, f)
            total ^= _poly_mulmod(xi, power, f)
        out.append(bin(a2 & total).count("1") % 2)
    return BitString.from_bits(out)
