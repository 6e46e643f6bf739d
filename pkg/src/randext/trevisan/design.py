"""Weak designs: families of t-subsets of the seed positions with small overlaps.

The basic design identifies the ``t*t`` seed positions with pairs
``(alpha, beta)`` over GF(t) and gives each output index ``i`` the graph of
the polynomial whose coefficients are the base-``t`` digits of ``i``.  The
block design stacks basic designs on disjoint seed segments so that the
overlap sum satisfies the ``r = 1`` bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np

from ..errors import ExtractorError
from ..primes import is_prime

TWO_E = 2 * math.e
CHECK_LIMIT = 1 << 12


@dataclass(frozen=True)
class WeakDesign:
    sets: tuple[tuple[int, ...], ...]
    t: int
    d: int
    r: str  # "2e" or "1"
    blocks: int = 1

    @property
    def m(self) -> int:
        return len(self.sets)

    def indicator(self, rows=None, columns=None) -> np.ndarray:
        rows = range(self.m) if rows is None else rows
        lo, hi = (0, self.d) if columns is None else columns
        mat = np.zeros((len(rows), hi - lo), dtype=np.int32)
        for r, i in enumerate(rows):
            mat[r, [p - lo for p in self.sets[i]]] = 1
        return mat

    def _segments(self) -> dict[int, list[int]]:
        # sets confined to one t*t segment can only meet sets of the same segment
        width = self.d // self.blocks
        groups: dict[int, list[int]] = {}
        for i, s in enumerate(self.sets):
            seg = min(s) // width
            if max(s) // width != seg:
                return {0: list(range(self.m))}
            groups.setdefault(seg, []).append(i)
        return groups

    def overlap_sums(self) -> list[int]:
        """``sum_{j<i} 2**|S_j & S_i|`` for every ``i``."""
        groups = self._segments()
        width = self.d if len(groups) == 1 else self.d // self.blocks
        sums = [0] * self.m
        for seg, rows in groups.items():
            cols = (0, self.d) if len(groups) == 1 else (seg * width, (seg + 1) * width)
            mat = self.indicator(rows, cols).astype(np.float64)
            # entries are counts <= t, so the BLAS product is exact
            inter = np.rint(mat @ mat.T).astype(np.int64)
            for r, i in enumerate(rows):
                counts = np.bincount(inter[r, :r], minlength=1)
                sums[i] = sum(int(c) << k for k, c in enumerate(counts))
                # every earlier set from another segment is disjoint: 2**0 each
                sums[i] += i - r
        return sums

    def satisfies_contract(self) -> bool:
        if any(len(set(s)) != self.t or max(s) >= self.d for s in self.sets):
            return False
        sums = self.overlap_sums()
        if self.r == "1":
            return all(s <= self.m for s in sums)
        with mpmath.workdps(40):
            bound = 2 * mpmath.e * self.m
            return all(s <= bound for s in sums)


def _poly_digits(i: int, t: int, c: int) -> list[int]:
    digits = []
    for _ in range(c):
        digits.append(i % t)
        i //= t
    return digits


def _degree_bound(count: int, t: int) -> int:
    c = 1
    while t**c < count:
        c += 1
    return c


def basic_sets(count: int, t: int, offset: int = 0) -> list[tuple[int, ...]]:
    if not is_prime(t):
        raise ExtractorError(f"design parameter t={t} must be prime")
    if count < 1:
        return []
    c = _degree_bound(count, t)
    if c > t:
        raise ExtractorError(f"{count} sets exceed the t**t capacity for t={t}")
    sets = []
    for i in range(count):
        coeffs = _poly_digits(i, t, c)
        positions = []
        for alpha in range(t):
            value = 0
            for coef in reversed(coeffs):
                value = (value * alpha + coef) % t
            positions.append(offset + alpha * t + value)
        sets.append(tuple(positions))
    return sets


def basic_weak_design(m_b: int, t: int) -> WeakDesign:
    """Single polynomial design over ``t*t`` positions, overlap parameter ``2e``."""
    if m_b < 1:
        raise ExtractorError("a design needs at least one set")
    return WeakDesign(tuple(basic_sets(m_b, t)), t, t * t, "2e")


def block_sizes(m: int, t: int) -> list[int]:
    """Sets per block: ``ceil(v/2e)`` of the ``v`` still unassigned, until ``v <= t``."""
    sizes = []
    remaining = m
    while remaining > t:
        take = math.ceil(remaining / TWO_E)
        sizes.append(take)
        remaining -= take
    if remaining:
        sizes.append(remaining)
    return sizes


@lru_cache(maxsize=32)
def block_weak_design(m: int, t: int) -> WeakDesign:
    """Block design with overlap parameter 1 over ``blocks * t*t`` positions.

    The overlap contract is verified on construction whenever ``m <= 4096``.
    """
    if m < 1:
        raise ExtractorError("a design needs at least one set")
    sets: list[tuple[int, ...]] = []
    sizes = block_sizes(m, t)
    for b, size in enumerate(sizes):
        sets.extend(basic_sets(size, t, offset=b * t * t))
    design = WeakDesign(tuple(sets), t, len(sizes) * t * t, "1", len(sizes))
    if m <= CHECK_LIMIT and not design.satisfies_contract():
        raise ExtractorError(f"block design for m={m}, t={t} violates the overlap bound")
    return design
