"""Exact integer convolution with the number-theoretic transform.

Two prime moduli are supported: ``3*2**30 + 1`` for transforms up to
``2**30`` points and ``9*2**42 + 1`` up to ``2**42``.  Inputs are bit
vectors, so every true convolution coefficient is at most the vector
length; reducing the exact mod-p result mod 2 therefore gives the true
parity as long as the length stays below the modulus.
"""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, NamedTuple

import numba
import numpy as np

from .bits import BitString
from .errors import CapacityError, ExtractorError
from .primes import is_prime, prime_factors, smallest_primitive_root

SMALL_PRIME = 3 * 2**30 + 1
BIG_PRIME = 9 * 2**42 + 1

# Largest bit-vector length routed to the small modulus by default.
SMALL_MAX_INPUT = 2**29
MAX_INPUT = 2**40


class ModulusChoice(enum.Enum):
    SMALL = "small"
    BIG = "big"

    @property
    def modulus(self) -> int:
        return SMALL_PRIME if self is ModulusChoice.SMALL else BIG_PRIME

    @property
    def max_log_size(self) -> int:
        return 30 if self is ModulusChoice.SMALL else 42


@numba.njit(inline="always")
def _mulmod_small(a, b):
    return (a * b) % np.uint64(SMALL_PRIME)


@numba.njit(inline="always")
def _mulmod_big(a, b):
    # operands < 2**46: feed b in 16-bit limbs so no product exceeds 2**63
    p = np.uint64(BIG_PRIME)
    mask = np.uint64(0xFFFF)
    r = (a * (b >> np.uint64(32))) % p
    r = ((r << np.uint64(16)) + a * ((b >> np.uint64(16)) & mask)) % p
    r = ((r << np.uint64(16)) + a * (b & mask)) % p
    return r


class _Kernels(NamedTuple):
    twiddles: Callable
    forward_dif: Callable
    forward_dit: Callable
    bit_reverse: Callable
    pointwise: Callable
    scale: Callable


def _make_kernels(mulmod, modulus):
    mod = np.uint64(modulus)

    @numba.njit(cache=True)
    def twiddles(root, size):
        # tw[h + k] = root ** (k * size / (2h)) for each stage half-width h
        tw = np.zeros(max(size, 1), dtype=np.uint64)
        h = 1
        while h < size:
            w = np.uint64(1)
            step = np.uint64(root)
            e = size // (2 * h)
            base = np.uint64(1)
            while e:
                if e & 1:
                    base = mulmod(base, step)
                step = mulmod(step, step)
                e >>= 1
            for k in range(h):
                tw[h + k] = w
                w = mulmod(w, base)
            h <<= 1
        return tw

    @numba.njit(cache=True)
    def forward_dif(a, tw):
        # natural-order input, bit-reversed output
        n = a.shape[0]
        h = n >> 1
        while h >= 1:
            for start in range(0, n, 2 * h):
                for k in range(h):
                    u = a[start + k]
                    v = a[start + k + h]
                    s = u + v
                    if s >= mod:
                        s -= mod
                    a[start + k] = s
                    a[start + k + h] = mulmod(u - v if u >= v else u + mod - v, tw[h + k])
            h >>= 1

    @numba.njit(cache=True)
    def forward_dit(a, tw):
        # bit-reversed input, natural-order output
        n = a.shape[0]
        h = 1
        while h < n:
            for start in range(0, n, 2 * h):
                for k in range(h):
                    u = a[start + k]
                    v = mulmod(a[start + k + h], tw[h + k])
                    s = u + v
                    if s >= mod:
                        s -= mod
                    a[start + k] = s
                    a[start + k + h] = u - v if u >= v else u + mod - v
            h <<= 1

    @numba.njit(cache=True)
    def pointwise(a, b):
        for i in range(a.shape[0]):
            a[i] = mulmod(a[i], b[i])

    @numba.njit(cache=True)
    def scale(a, c):
        for i in range(a.shape[0]):
            a[i] = mulmod(a[i], c)

    @numba.njit(cache=True)
    def bit_reverse(a):
        n = a.shape[0]
        j = 0
        for i in range(1, n):
            bit = n >> 1
            while j & bit:
                j ^= bit
                bit >>= 1
            j |= bit
            if i < j:
                a[i], a[j] = a[j], a[i]

    return _Kernels(twiddles, forward_dif, forward_dit, bit_reverse, pointwise, scale)


_KERNELS = {
    ModulusChoice.SMALL: _make_kernels(_mulmod_small, SMALL_PRIME),
    ModulusChoice.BIG: _make_kernels(_mulmod_big, BIG_PRIME),
}


@dataclass(frozen=True)
class NttPlan:
    """Precomputed constants for an ``size``-point transform mod ``modulus``."""

    modulus: int
    size: int
    root: int
    inv_root: int
    inv_size: int
    generator: int
    choice: ModulusChoice = field(repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)
    _table: list = field(default_factory=list, repr=False, compare=False)

    @property
    def twiddles(self) -> np.ndarray:
        if not self._table:
            with self._lock:
                if not self._table:
                    self._table.append(_KERNELS[self.choice].twiddles(self.root, self.size))
        return self._table[0]


@lru_cache(maxsize=None)
def _generator(p: int) -> int:
    assert is_prime(p) and prime_factors(p - 1) == [2, 3]
    return smallest_primitive_root(p)


@lru_cache(maxsize=64)
def build_plan(size: int, choice: ModulusChoice = ModulusChoice.SMALL) -> NttPlan:
    """Plan for a ``size``-point transform; ``size`` must be a power of two."""
    choice = ModulusChoice(choice)
    if size < 1 or size & (size - 1):
        raise CapacityError(f"transform size {size} is not a power of two")
    if size > 1 << choice.max_log_size:
        raise CapacityError(f"size {size} exceeds 2**{choice.max_log_size} for the {choice.value} modulus")
    p = choice.modulus
    g = _generator(p)
    root = pow(g, (p - 1) // size, p)
    if pow(root, size, p) != 1 or (size > 1 and pow(root, size // 2, p) == 1):
        raise ArithmeticError(f"no root of order {size} mod {p}")
    return NttPlan(
        modulus=p,
        size=size,
        root=root,
        inv_root=pow(root, -1, p),
        inv_size=pow(size, -1, p),
        generator=g,
        choice=choice,
    )


def _as_residues(v, plan: NttPlan) -> np.ndarray:
    arr = np.array(v, dtype=np.uint64)
    if arr.shape != (plan.size,):
        raise ExtractorError(f"expected {plan.size} residues, got shape {arr.shape}")
    if arr.size and int(arr.max()) >= plan.modulus:
        raise ExtractorError("residue out of range for modulus")
    return arr


def _forward_inplace(a: np.ndarray, plan: NttPlan) -> None:
    k = _KERNELS[plan.choice]
    k.bit_reverse(a)
    k.forward_dit(a, plan.twiddles)


def _finish_inverse(a: np.ndarray, plan: NttPlan) -> np.ndarray:
    # a holds forward(v) in natural order; inverse(v)_k = forward(v)_{-k mod L} / L
    a[1:] = a[1:][::-1].copy()
    _KERNELS[plan.choice].scale(a, np.uint64(plan.inv_size))
    return a


def _inverse_inplace(a: np.ndarray, plan: NttPlan) -> np.ndarray:
    _forward_inplace(a, plan)
    return _finish_inverse(a, plan)


def ntt_forward(v, plan: NttPlan) -> np.ndarray:
    """``out[i] = sum_j v[j] * root**(i*j) mod p``."""
    a = _as_residues(v, plan)
    _forward_inplace(a, plan)
    return a


def ntt_inverse(v, plan: NttPlan) -> np.ndarray:
    a = _as_residues(v, plan)
    return _inverse_inplace(a, plan)


def select_modulus(n: int, force: ModulusChoice | str | None = None) -> ModulusChoice:
    if n > MAX_INPUT:
        raise CapacityError(f"length {n} exceeds the supported 2**40 bits")
    if force is not None:
        choice = ModulusChoice(force)
        if choice is ModulusChoice.SMALL and n > SMALL_MAX_INPUT:
            raise CapacityError(f"length {n} requires the big modulus")
        return choice
    return ModulusChoice.SMALL if n <= SMALL_MAX_INPUT else ModulusChoice.BIG


def cyclic_size(n: int) -> int:
    """Power-of-two transform size for a length-``n`` cyclic product (>= 2n-1)."""
    if n <= 1:
        return 1
    return 1 << ((2 * n - 2).bit_length())


def _cyclic_product(u: np.ndarray, v: np.ndarray, size: int, choice: ModulusChoice) -> np.ndarray:
    plan = build_plan(size, choice)
    k = _KERNELS[choice]
    tw = plan.twiddles
    a = np.zeros(size, dtype=np.uint64)
    b = np.zeros(size, dtype=np.uint64)
    a[: len(u)] = u
    b[: len(v)] = v
    # both spectra stay in bit-reversed order; the pointwise product does not care
    k.forward_dif(a, tw)
    k.forward_dif(b, tw)
    k.pointwise(a, b)
    del b
    k.forward_dit(a, tw)
    return _finish_inverse(a, plan)


def convolve_parity(u: np.ndarray, v: np.ndarray, size: int, choice: ModulusChoice) -> np.ndarray:
    """Size-``size`` cyclic convolution of 0/1 vectors, returned mod 2.

    Both operands are zero-padded to ``size`` (a power of two).
    """
    return (_cyclic_product(u, v, size, choice) & np.uint64(1)).astype(np.uint8)


def cyclic_parity_arrays(u: np.ndarray, v: np.ndarray, force: ModulusChoice | str | None = None) -> np.ndarray:
    """Length-n cyclic convolution mod 2 of two 0/1 arrays of length n."""
    n = len(u)
    if len(v) != n or n < 1:
        raise ExtractorError("operands must be non-empty and of equal length")
    a = _cyclic_product(u, v, cyclic_size(n), select_modulus(n, force))
    # the linear product has 2n-1 terms; fold index i+n back onto i
    out = a[:n].copy()
    out[: n - 1] += a[n : 2 * n - 1]
    return (out & np.uint64(1)).astype(np.uint8)


def cyclic_convolve_mod2(u: BitString, v: BitString, force: ModulusChoice | str | None = None) -> BitString:
    """``w[i] = sum_j u[(i-j) mod n] * v[j] mod 2``, computed exactly."""
    if len(u) != len(v):
        raise ExtractorError(f"length mismatch: {len(u)} vs {len(v)}")
    return BitString.from_array(cyclic_parity_arrays(u.to_array(), v.to_array(), force))
