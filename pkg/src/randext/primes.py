"""Integer primality, factorisation and primitive roots."""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

TRIAL_LIMIT = 10**6

# Deterministic Miller-Rabin witnesses for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


@lru_cache(maxsize=None)
def small_primes(limit: int = TRIAL_LIMIT) -> tuple[int, ...]:
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return tuple(np.flatnonzero(sieve).tolist())


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        y, r, q, g = 2, 1, 1, 1
        f = lambda v: (v * v + c) % n  # noqa: E731
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = f(y)
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = f(y)
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = f(ys)
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"failed to split {n}")


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order.

    Trial division by primes below ``TRIAL_LIMIT`` first; any cofactor left
    over is split with Miller-Rabin and Pollard-Brent.
    """
    if n < 1:
        raise ValueError("n must be positive")
    found: set[int] = set()
    for p in small_primes():
        if p * p > n:
            break
        if n % p == 0:
            found.add(p)
            while n % p == 0:
                n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            found.add(m)
            continue
        d = _pollard_brent(m)
        stack.extend((d, m // d))
    return sorted(found)


def multiplicative_order(a: int, n: int) -> int:
    """Order of ``a`` modulo prime ``n``."""
    order = n - 1
    for q in prime_factors(n - 1):
        while order % q == 0 and pow(a, order // q, n) == 1:
            order //= q
    return order


def is_primitive_root(g: int, p: int, factors: list[int] | None = None) -> bool:
    if factors is None:
        factors = prime_factors(p - 1)
    return all(pow(g, (p - 1) // q, p) != 1 for q in factors)


def smallest_primitive_root(p: int) -> int:
    factors = prime_factors(p - 1)
    g = 2 if p > 2 else 1
    while not is_primitive_root(g, p, factors):
        g += 1
    return g


def next_prime(n: int) -> int:
    """Smallest prime ``>= n``."""
    n = max(n, 2)
    while not is_prime(n):
        n += 1
    return n
