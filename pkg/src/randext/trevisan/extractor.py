"""Trevisan's extractor: block weak design plus the Reed-Solomon-Hadamard 1-bit extractor."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numba
import numpy as np

from ..bits import BitString
from ..errors import ExtractorError, SeedLengthError
from ..params import as_fraction, exact_floor, exact_sum, high_precision, log2
from ..primes import next_prime
from .design import WeakDesign, block_sizes, block_weak_design
from .field import GF2Field, find_irreducible

# Above this degree field elements no longer fit the jitted int64 kernel.
_FAST_DEGREE = 62


@dataclass(frozen=True)
class TrevisanParams:
    """Derived parameters for an ``n``-bit input and ``m`` output bits.

    Attributes
    ----------
    eps1 : Fraction
        Per-bit error ``eps / m``.
    q : int
        Lower bound ``2 * l`` for the design prime.
    t : int
        Smallest prime ``>= q``; every design set has ``t`` seed positions.
    a : int
        Number of ``t*t``-bit seed blocks; ``d = a * t*t``.
    a_formula : int
        Block count given by the closed formula, before reconciling with
        the number of blocks the partition rule actually uses.
    l : int
        Degree of the field GF(2^l).
    s : int
        Number of ``l``-bit chunks the input is split into.
    poly : int
        Irreducible modulus of GF(2^l), bit ``k`` = coefficient of ``x**k``.
    """

    n: int
    m: int
    eps: Fraction
    eps1: Fraction
    q: int
    t: int
    a: int
    a_formula: int
    l: int
    d: int
    s: int
    poly: int

    @property
    def field(self) -> GF2Field:
        return GF2Field(self.poly)


@high_precision
def _field_degree(n: int, eps1: Fraction) -> int:
    value = exact_sum(log2(n), 2 * log2(2 / eps1))
    return -exact_floor(-value) if isinstance(value, Fraction) else int(mpmath.ceil(value))


@high_precision
def block_count_formula(m: int, t: int) -> int:
    """``max(1, ceil(log((m-2e)/(t-2e)) / log(2e/(2e-1))))``, or 1 where undefined."""
    two_e = 2 * mpmath.e
    if m <= two_e or t <= two_e:
        return 1
    ratio = (mpmath.log(m - two_e) - mpmath.log(t - two_e)) / (mpmath.log(two_e) - mpmath.log(two_e - 1))
    return max(1, int(mpmath.ceil(ratio)))


def compute_params(n: int, m: int, eps) -> TrevisanParams:
    """Parameters for extracting ``m`` bits from ``n`` with total error ``eps``."""
    if n < 2 or m < 1:
        raise ExtractorError(f"need n >= 2 and m >= 1, got n={n}, m={m}")
    eps = as_fraction(eps)
    if not 0 < eps < 1:
        raise ExtractorError("eps must lie in (0, 1)")
    eps1 = eps / m
    l = _field_degree(n, eps1)
    q = 2 * l
    t = next_prime(q)
    a_formula = block_count_formula(m, t)
    a = max(a_formula, len(block_sizes(m, t)))
    return TrevisanParams(
        n=n, m=m, eps=eps, eps1=eps1, q=q, t=t, a=a, a_formula=a_formula,
        l=l, d=a * t * t, s=math.ceil(n / l), poly=find_irreducible(l),
    )


def _to_int(bits: np.ndarray) -> int:
    """Field element from ``l`` bits, first bit = highest power."""
    value = 0
    for b in bits.tolist():
        value = (value << 1) | b
    return value


def _chunks(x: np.ndarray, params: TrevisanParams) -> np.ndarray:
    padded = np.zeros(params.s * params.l, dtype=np.int64)
    padded[: len(x)] = x
    blocks = padded.reshape(params.s, params.l)
    if params.l <= _FAST_DEGREE:
        weights = np.int64(1) << np.arange(params.l - 1, -1, -1, dtype=np.int64)
        return blocks @ weights
    return np.array([_to_int(row) for row in blocks], dtype=object)


def _parity(v: int) -> int:
    return bin(v).count("1") & 1


def rsh_onebit(x: BitString, y_chunk: BitString, params: TrevisanParams) -> int:
    """One output bit from the input and a ``t``-bit slice of the seed.

    The input is cut into ``s`` field elements ``x_1 .. x_s``; with
    ``alpha1``, ``alpha2`` the first two ``l``-bit pieces of the slice the
    result is the parity of ``alpha2 AND sum_i x_i * alpha1**(s-i)``.
    """
    if len(x) != params.n:
        raise ExtractorError(f"input must have {params.n} bits, got {len(x)}")
    if len(y_chunk) != params.t:
        raise ExtractorError(f"seed slice must have {params.t} bits, got {len(y_chunk)}")
    l = params.l
    y = y_chunk.to_array()
    alpha1, alpha2 = _to_int(y[:l]), _to_int(y[l : 2 * l])
    p = params.field.horner((int(c) for c in _chunks(x.to_array(), params)), alpha1)
    return _parity(alpha2 & p)


@numba.njit(cache=True)
def _gf_mul(a, b, top, f):
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= f
    return out


@numba.njit(cache=True)
def _popcount_parity(v):
    p = 0
    while v:
        v &= v - 1
        p ^= 1
    return p


@numba.njit(cache=True)
def _rsh_many(chunks, alpha1, alpha2, l, f):
    top = np.int64(1) << l
    out = np.zeros(alpha1.shape[0], dtype=np.uint8)
    for i in range(alpha1.shape[0]):
        acc = np.int64(0)
        a1 = alpha1[i]
        for c in chunks:
            acc = _gf_mul(acc, a1, top, f) ^ c
        out[i] = _popcount_parity(acc & alpha2[i])
    return out


def design_for(params: TrevisanParams) -> WeakDesign:
    return block_weak_design(params.m, params.t)


def trevisan_extract(x: BitString, y: BitString, params: TrevisanParams) -> BitString:
    """``m`` output bits; bit ``i`` is the 1-bit extractor on ``y`` restricted to ``S_i``."""
    if len(x) != params.n:
        raise ExtractorError(f"input must have {params.n} bits, got {len(x)}")
    if len(y) != params.d:
        raise SeedLengthError(f"seed must have {params.d} bits, got {len(y)}")
    l = params.l
    positions = np.sort(np.asarray(design_for(params).sets, dtype=np.int64), axis=1)[:, : 2 * l]
    seed_bits = y.to_array()[positions]
    chunks = _chunks(x.to_array(), params)
    if l <= _FAST_DEGREE:
        weights = np.int64(1) << np.arange(l - 1, -1, -1, dtype=np.int64)
        alpha1 = seed_bits[:, :l].astype(np.int64) @ weights
        alpha2 = seed_bits[:, l:].astype(np.int64) @ weights
        out = _rsh_many(np.ascontiguousarray(chunks), alpha1, alpha2, l, params.poly)
        return BitString.from_array(out)
    gf = params.field
    coeffs = [int(c) for c in chunks]
    out = np.zeros(params.m, dtype=np.uint8)
    for i, row in enumerate(seed_bits):
        p = gf.horner(coeffs, _to_int(row[:l]))
        out[i] = _parity(_to_int(row[l:]) & p)
    return BitString.from_array(out)
