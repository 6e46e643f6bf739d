"""Arithmetic in GF(2^l), elements packed into Python ints.

Bit ``k`` of an int is the coefficient of ``x**k``.
"""

from __future__ import annotations

from functools import lru_cache

from ..primes import prime_factors


def clmul(a: int, b: int) -> int:
    """Carry-less product of two binary polynomials."""
    if a.bit_count() < b.bit_count():
        a, b = b, a
    out = 0
    while b:
        low = b & -b
        out ^= a << (low.bit_length() - 1)
        b ^= low
    return out


def poly_mod(a: int, f: int) -> int:
    df = f.bit_length()
    while a.bit_length() >= df:
        a ^= f << (a.bit_length() - df)
    return a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def _x_pow_2k(k: int, f: int) -> int:
    """``x**(2**k) mod f`` by repeated squaring."""
    r = poly_mod(0b10, f)
    for _ in range(k):
        r = poly_mod(clmul(r, r), f)
    return r


def is_irreducible(f: int) -> bool:
    """Rabin's test for a binary polynomial of degree ``l >= 1``."""
    l = f.bit_length() - 1
    if l < 1:
        return False
    x = poly_mod(0b10, f)
    if _x_pow_2k(l, f) != x:
        return False
    return all(poly_gcd(f, _x_pow_2k(l // q, f) ^ x) == 1 for q in prime_factors(l)) if l > 1 else True


@lru_cache(maxsize=None)
def find_irreducible(l: int) -> int:
    """Smallest irreducible degree-``l`` polynomial with a nonzero constant term."""
    if l < 1:
        raise ValueError("degree must be at least 1")
    f = (1 << l) | 1
    while not is_irreducible(f):
        f += 2
    return f


class GF2Field:
    """The field GF(2)[x] / f for an irreducible ``f`` of degree ``l``."""

    def __init__(self, modulus: int):
        self.modulus = modulus
        self.degree = modulus.bit_length() - 1
        self.order = 1 << self.degree
        self._top = 1 << self.degree

    def __repr__(self):
        return f"GF2Field(degree={self.degree}, modulus={self.modulus:#x})"

    def mul(self, a: int, b: int) -> int:
        # shift-and-add with reduction at every step keeps operands below 2**l
        out = 0
        top, f = self._top, self.modulus
        while b:
            if b & 1:
                out ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= f
        return out

    def pow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.pow(a, self.order - 2)

    def horner(self, coefficients, point: int) -> int:
        """``sum c_i * point**(s-1-i)`` for coefficients listed highest power first."""
        acc = 0
        for c in coefficients:
            acc = self.mul(acc, point) ^ c
        return acc
