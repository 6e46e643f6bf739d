"""Parameter engine: admissible lengths, output and seed lengths, error lifts.

Every output-length bound is evaluated with exact rationals where the
logarithms are exact (powers of two) and with 80-digit ``mpmath`` floats
otherwise; the floor is applied once, to the final value.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import NamedTuple, Union

import mpmath

from .errors import ExtractorError, UnsupportedModelError
from .primes import is_prime, prime_factors

Number = Union[int, float, Fraction, mpmath.mpf]
Exact = Union[Fraction, mpmath.mpf]

_DPS = 80


class Kind(str, enum.Enum):
    CIRCULANT = "circulant"
    DODIS = "dodis"
    TOEPLITZ = "toeplitz"
    TREVISAN = "trevisan"
    VON_NEUMANN = "von-neumann"


class SecurityModel(str, enum.Enum):
    CLASSICAL_SEEDED = "classical-seeded"
    QUANTUM_SEEDED = "quantum-seeded"
    PRODUCT_TWO_SOURCE = "product-two-source"
    MARKOV_CLASSICAL = "markov-two-source-classical"
    MARKOV_QUANTUM = "markov-two-source-quantum"

    @property
    def seeded(self) -> bool:
        return self in (SecurityModel.CLASSICAL_SEEDED, SecurityModel.QUANTUM_SEEDED)


def as_fraction(x: Number | str) -> Fraction:
    """Exact rational for ``x``; floats go through their shortest repr."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, mpmath.mpf):
        man, exp = x.man_exp
        return Fraction(man) * Fraction(2) ** exp
    if isinstance(x, str):
        return parse_number(x)
    raise TypeError(f"cannot convert {x!r} to a rational")


def parse_number(text: str) -> Fraction:
    """Parse ``"0.25"``, ``"1e-10"``, ``"3/4"`` or ``"2^-32"`` exactly."""
    text = text.strip().replace("**", "^")
    if "^" in text:
        base, _, exp = text.partition("^")
        base_f, exp_f = parse_number(base), parse_number(exp)
        if exp_f.denominator != 1:
            raise ValueError(f"non-integer exponent in {text!r}")
        return base_f ** int(exp_f)
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a number: {text!r}") from None


def high_precision(func):
    """Run ``func`` with mpmath working at the engine's precision."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        with mpmath.workdps(_DPS):
            return func(*args, **kwargs)

    return wrapper


@high_precision
def log2(x: Number) -> Exact:
    """Base-2 logarithm; exact (a Fraction) when ``x`` is a power of two."""
    q = as_fraction(x)
    if q <= 0:
        raise ValueError("log2 of a non-positive number")
    num, den = q.numerator, q.denominator
    if num & (num - 1) == 0 and den & (den - 1) == 0:
        return Fraction(num.bit_length() - den.bit_length())
    with mpmath.workdps(_DPS):
        return mpmath.log(mpmath.mpf(num) / den, 2)


def _mp(x: Exact) -> mpmath.mpf:
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


@high_precision
def exact_sum(*terms: Exact) -> Exact:
    """Sum rationals exactly; fall back to high precision if any term is irrational."""
    rational = sum((t for t in terms if isinstance(t, (Fraction, int))), Fraction(0))
    irrational = [t for t in terms if not isinstance(t, (Fraction, int))]
    if not irrational:
        return rational
    with mpmath.workdps(_DPS):
        return _mp(rational) + mpmath.fsum(irrational)


@high_precision
def exact_floor(x: Exact) -> int:
    if isinstance(x, (Fraction, int)):
        return math.floor(x)
    with mpmath.workdps(_DPS):
        return int(mpmath.floor(x))


def _scale(c: Number, x: Exact) -> Exact:
    c = as_fraction(c)
    if isinstance(x, (Fraction, int)):
        return c * x
    with mpmath.workdps(_DPS):
        return _mp(c) * x


# ---------------------------------------------------------------- primes


def is_na_prime(n: int) -> bool:
    """True iff ``n`` is prime and 2 generates the multiplicative group mod ``n``."""
    if n < 3 or not is_prime(n):
        return False
    # 2 is a quadratic residue mod n when n = +-1 mod 8, so it cannot generate
    if n % 8 in (1, 7):
        return False
    return all(pow(2, (n - 1) // q, n) != 1 for q in prime_factors(n - 1))


class Direction(str, enum.Enum):
    NEXT = "next"
    PREVIOUS = "previous"
    CLOSEST = "closest"


def na_search(n: int, direction: Direction | str = Direction.NEXT) -> int:
    """Admissible prime nearest ``n`` (inclusive) in the given direction.

    ``closest`` resolves ties upward.
    """
    direction = Direction(direction)
    if direction is Direction.NEXT:
        m = max(n, 3)
        while not is_na_prime(m):
            m += 1
        return m
    if direction is Direction.PREVIOUS:
        if n < 3:
            raise ExtractorError(f"no admissible prime <= {n}")
        m = n
        while not is_na_prime(m):
            m -= 1
        return m
    up = na_search(n, Direction.NEXT)
    if n < 3:
        return up
    down = na_search(n, Direction.PREVIOUS)
    return down if n - down < up - n else up


# ---------------------------------------------------------------- output length


@dataclass(frozen=True)
class ExtractorSpec:
    """Extractor choice plus the length/entropy/error parameters it runs with.

    ``n2`` and ``k2`` default from ``n1`` when left as ``None``: the seed
    length of the chosen extractor, with full entropy.
    """

    kind: Kind
    n1: int
    k1: Number
    eps: Number
    model: SecurityModel = SecurityModel.QUANTUM_SEEDED
    n2: int | None = None
    k2: Number | None = None
    m: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "model", SecurityModel(self.model))
        eps = as_fraction(self.eps)
        if not 0 < eps < 1:
            raise ExtractorError("eps must lie strictly between 0 and 1")
        if not 0 <= as_fraction(self.k1) <= self.n1:
            raise ExtractorError("k1 must satisfy 0 <= k1 <= n1")
        if self.n2 is not None and self.k2 is not None:
            if not 0 <= as_fraction(self.k2) <= self.n2:
                raise ExtractorError("k2 must satisfy 0 <= k2 <= n2")
            if self.model.seeded and as_fraction(self.k2) != self.n2:
                raise ExtractorError("seeded models require k2 == n2")


def _circulant_n(spec: ExtractorSpec) -> int:
    return spec.n2 if spec.n2 is not None else spec.n1 + 1


def _deficiency(spec: ExtractorSpec, n2: int) -> Fraction:
    """``n2 - k2``: how far the second source is from uniform."""
    if spec.k2 is None:
        return Fraction(0)
    return n2 - as_fraction(spec.k2)


def _largest_m(bound_for_m) -> int:
    """Largest m >= 1 with m <= bound_for_m(m), for bounds decreasing in m; else 0."""
    if exact_floor(bound_for_m(1)) < 1:
        return 0
    lo, hi = 1, 2
    while exact_floor(bound_for_m(hi)) >= hi:
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if exact_floor(bound_for_m(mid)) >= mid:
            lo = mid
        else:
            hi = mid
    return lo


_LOG3 = log2(3)
_LOG4_3 = log2(Fraction(4, 3))


@high_precision
def output_bound(spec: ExtractorSpec, m: int | None = None) -> Exact:
    """Real-valued right-hand side of the output-length inequality.

    ``m`` is required for Trevisan, whose bound depends on the output length.
    """
    k1 = as_fraction(spec.k1)
    le = log2(spec.eps)
    kind, model = spec.kind, spec.model
    if kind is Kind.VON_NEUMANN:
        raise UnsupportedModelError("von-neumann output length is random, not a min-entropy bound")

    if kind in (Kind.CIRCULANT, Kind.TOEPLITZ):
        if model.seeded:
            return exact_sum(k1, 2 * le)
        # two-universal: Markov and product models share the two-source bound
        if kind is Kind.CIRCULANT:
            n2 = _circulant_n(spec)
            return exact_sum(k1, -_deficiency(spec, n2), 2 * le)
        k2 = as_fraction(spec.k2) if spec.k2 is not None else None
        if k2 is None:
            raise ExtractorError("toeplitz two-source bound needs k2")
        return _scale(Fraction(1, 2), exact_sum(k1, k2, -spec.n1, 1, 2 * le))

    if kind is Kind.DODIS:
        n = spec.n1
        k2 = as_fraction(spec.k2) if spec.k2 is not None else Fraction(n)
        if model is SecurityModel.CLASSICAL_SEEDED:
            return exact_sum(k1, 1, 2 * le)
        if model is SecurityModel.QUANTUM_SEEDED:
            return _scale(Fraction(1, 5), exact_sum(k1, 8 * le, 4 * _LOG4_3, 1))
        if model is SecurityModel.PRODUCT_TWO_SOURCE:
            return exact_sum(k1, k2, -n, 1, 2 * le)
        if model is SecurityModel.MARKOV_CLASSICAL:
            # generic classical Markov lift run at eps/3: both entropies lose log2(3/eps)
            le3 = log2(as_fraction(spec.eps) / 3)
            return exact_sum(k1, k2, -n, 1, 4 * le3)
        return _scale(Fraction(1, 5), exact_sum(k1, k2, -n, 8 * le, 9, -4 * _LOG3))

    # Trevisan
    if m is None:
        raise ExtractorError("the trevisan bound depends on m")
    lm = log2(m)
    if model.seeded:
        return exact_sum(k1, 4 * le, -4 * lm, -6)
    deficit = _deficiency(spec, spec.n2 if spec.n2 is not None else 0)
    if model is SecurityModel.PRODUCT_TWO_SOURCE:
        return exact_sum(k1, -4 * deficit, 4 * le, -4 * lm, -6)
    if model is SecurityModel.MARKOV_CLASSICAL:
        le3 = log2(as_fraction(spec.eps) / 3)
        return exact_sum(k1, -4 * deficit, 9 * le3, -4 * lm, -6)
    return _scale(Fraction(1, 10), exact_sum(k1, -4 * deficit, -4 * lm, 18 * le, 9 * _LOG4_3, -6))


@high_precision
def calc_output_length(spec: ExtractorSpec) -> int:
    """Largest output length the security model of ``spec`` allows (0 if none)."""
    if spec.kind is Kind.TREVISAN:
        return _largest_m(lambda m: output_bound(spec, m))
    if spec.kind is Kind.TOEPLITZ and not spec.model.seeded and spec.k2 is None:
        raise ExtractorError("toeplitz two-source output length needs k2")
    return max(exact_floor(output_bound(spec)), 0)


def calc_seed_length(kind: Kind | str, n1: int, m: int = 0, eps: Number | None = None) -> int:
    """Seed bits each extractor needs for an ``n1``-bit input and ``m`` output bits.

    ``eps`` is only consulted for Trevisan.
    """
    kind = Kind(kind)
    if kind is Kind.CIRCULANT:
        return na_search(n1 + 1, Direction.NEXT)
    if kind is Kind.DODIS:
        return na_search(n1, Direction.NEXT)
    if kind is Kind.TOEPLITZ:
        return n1 + m - 1
    if kind is Kind.TREVISAN:
        from .trevisan import compute_params

        if eps is None:
            raise ExtractorError("trevisan seed length depends on eps")
        return compute_params(n1, m, eps).d
    return 0


# ---------------------------------------------------------------- error lifts


def _clamp(err: Exact) -> Exact:
    return Fraction(1) if err >= 1 else err


def _pow2(exponent: Fraction) -> Exact:
    """2**exponent, exact when the exponent is an integer."""
    if exponent.denominator == 1:
        return Fraction(2) ** int(exponent)
    with mpmath.workdps(_DPS):
        return mpmath.power(2, _mp(exponent))


def _mul(a: Exact, b: Exact) -> Exact:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a * b
    with mpmath.workdps(_DPS):
        return _mp(a) * _mp(b)


@high_precision
def lift_two_source_error(eps: Number, n2: int, k2: Number, two_universal: bool) -> Exact:
    """Error of a seeded extractor run with a weak seed of min-entropy ``k2``."""
    gap = n2 - as_fraction(k2)
    if gap < 0:
        raise ExtractorError("k2 cannot exceed n2")
    factor = _pow2(gap / 2 if two_universal else gap)
    return _mul(factor, as_fraction(eps))


class MarkovLift(NamedTuple):
    k1: Exact
    k2: Exact
    error: Exact

    @property
    def vacuous(self) -> bool:
        """The lifted error is 1: the bound guarantees nothing."""
        return self.error >= 1


@high_precision
def lift_markov(eps: Number, m: int, k1: Number, k2: Number, quantum: bool) -> MarkovLift:
    """Generic penalty for running a two-source extractor in the Markov model.

    The entropies are the ones the underlying extractor effectively sees,
    ``k - log2(1/eps)``; errors of 1 or more are clamped to 1.
    """
    eps_f = as_fraction(eps)
    penalty = log2(1 / eps_f)
    k1e = exact_sum(as_fraction(k1), -penalty)
    k2e = exact_sum(as_fraction(k2), -penalty)
    if quantum:
        err = _mul(3 * eps_f, _pow2(Fraction(m - 2)))
        with mpmath.workdps(_DPS):
            root = mpmath.sqrt(_mp(err))
        # keep exact squares exact
        if isinstance(err, Fraction):
            n, d = err.numerator, err.denominator
            if math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d:
                root = Fraction(math.isqrt(n), math.isqrt(d))
        err = root
    else:
        err = 3 * eps_f
    return MarkovLift(k1e, k2e, _clamp(err))


class ErrorBudget(NamedTuple):
    error: Exact
    k1: Exact | None = None
    k2: Exact | None = None


def seed_reuse_error(t: int, eps: Number, eps_seed: Number) -> Fraction:
    """Error of ``t`` extractions sharing one ``eps_seed``-perfect seed."""
    return t * as_fraction(eps) + as_fraction(eps_seed)


def smooth_seeded_error(eps: Number, delta: Number) -> Fraction:
    return as_fraction(eps) + as_fraction(delta)


@high_precision
def smooth_two_source_error(
    eps: Number,
    delta1: Number,
    delta2: Number,
    eps1: Number,
    eps2: Number,
    k1: Number | None = None,
    k2: Number | None = None,
) -> ErrorBudget:
    err = 2 * as_fraction(eps) + 6 * (as_fraction(delta1) + as_fraction(delta2)) + 2 * (
        as_fraction(eps1) + as_fraction(eps2)
    )
    adj1 = exact_sum(as_fraction(k1), -log2(1 / as_fraction(eps1))) if k1 is not None else None
    adj2 = exact_sum(as_fraction(k2), -log2(1 / as_fraction(eps2))) if k2 is not None else None
    return ErrorBudget(err, adj1, adj2)


def compose_errors(mode: str, **args) -> ErrorBudget:
    """Dispatch on ``seed-reuse``, ``smooth-seeded`` or ``smooth-two-source``."""
    if mode == "seed-reuse":
        return ErrorBudget(seed_reuse_error(args["t"], args["eps"], args["eps_seed"]))
    if mode == "smooth-seeded":
        return ErrorBudget(smooth_seeded_error(args["eps"], args["delta"]))
    if mode == "smooth-two-source":
        return smooth_two_source_error(**args)
    raise ExtractorError(f"unknown composition mode {mode!r}")


# ---------------------------------------------------------------- suggestion


class SecondSource(str, enum.Enum):
    NONE = "none"
    PERFECT = "perfect"
    WEAK = "weak"


class Recommendation(NamedTuple):
    kind: Kind | None
    model: SecurityModel | None
    reason: str

    @property
    def possible(self) -> bool:
        return self.kind is not None


def suggest_extractor(
    exchangeable: bool = False,
    second_source: SecondSource | str = SecondSource.NONE,
    adversary: str = "quantum",
    seed_budget: int | None = None,
    n1: int | None = None,
    k1: Number | None = None,
    eps: Number = Fraction(1, 2**32),
) -> Recommendation:
    """Pick an extractor from a few yes/no facts about the sources.

    The seed budget is compared with the Circulant seed length ``n1 + 1``
    and, failing that, with Trevisan's seed length; ``n1`` and ``k1`` are
    needed only for that comparison.
    """
    second_source = SecondSource(second_source)
    quantum = adversary == "quantum"
    if adversary not in ("classical", "quantum"):
        raise ExtractorError(f"unknown adversary {adversary!r}")
    if exchangeable:
        return Recommendation(Kind.VON_NEUMANN, None, "exchangeable input bits: deterministic extraction")
    if second_source is SecondSource.NONE:
        return Recommendation(None, None, "min-entropy alone admits no deterministic extractor; a second source is required")
    if second_source is SecondSource.WEAK:
        if quantum:
            return Recommendation(
                Kind.CIRCULANT, SecurityModel.MARKOV_QUANTUM,
                "two-universal hashing tolerates a weak seed in the Markov model without extra penalty")
        return Recommendation(Kind.DODIS, SecurityModel.PRODUCT_TWO_SOURCE, "classical two-source extraction")

    seeded = SecurityModel.QUANTUM_SEEDED if quantum else SecurityModel.CLASSICAL_SEEDED
    if seed_budget is None or n1 is None or seed_budget >= n1 + 1:
        return Recommendation(Kind.CIRCULANT, seeded, "seed of length n1 + 1 available: near-optimal output, quasi-linear time")
    if k1 is None:
        raise ExtractorError("k1 is needed to size the Trevisan seed")
    trev = ExtractorSpec(Kind.TREVISAN, n1, k1, eps, seeded)
    m = calc_output_length(trev)
    if m > 0:
        from .trevisan import compute_params

        d = compute_params(n1, m, eps).d
        if seed_budget >= d:
            return Recommendation(Kind.TREVISAN, seeded, f"seed budget covers Trevisan's {d}-bit seed")
    model = SecurityModel.MARKOV_QUANTUM if quantum else SecurityModel.PRODUCT_TWO_SOURCE
    return Recommendation(
        Kind.CIRCULANT, model,
        "seed too short for any seeded extractor: zero-pad it to n1 + 1 bits and treat it as a weak seed")

