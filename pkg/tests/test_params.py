from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from randext.errors import ExtractorError, UnsupportedModelError
from randext.params import (
    Direction,
    ExtractorSpec,
    Kind,
    SecurityModel,
    calc_output_length,
    calc_seed_length,
    compose_errors,
    is_na_prime,
    lift_markov,
    lift_two_source_error,
    log2,
    na_search,
    output_bound,
    parse_number,
    suggest_extractor,
)
from randext.primes import multiplicative_order

QS = SecurityModel.QUANTUM_SEEDED


def test_parse_number():
    assert parse_number("2^-32") == Fraction(1, 2**32)
    assert parse_number("1e-10") == Fraction(1, 10**10)
    assert parse_number("3/4") == Fraction(3, 4)
    assert parse_number(" 2**10 ") == 1024
    with pytest.raises(ValueError):
        parse_number("two")


def test_log2_exact_for_powers_of_two():
    assert log2(Fraction(1, 1024)) == -10 and isinstance(log2(8), Fraction)
    with mpmath.workdps(90):
        assert abs(log2(3) - mpmath.log(3, 2)) < mpmath.mpf(10) ** -70


# -- admissible primes

def test_is_na_prime_examples():
    assert is_na_prime(3) and is_na_prime(5)
    assert not is_na_prime(7) and not is_na_prime(4) and not is_na_prime(2)
    assert [p for p in range(60) if is_na_prime(p)] == [3, 5, 11, 13, 19, 29, 37, 53, 59]


@given(st.integers(3, 20_000))
def test_is_na_prime_matches_order(n):
    from sympy import isprime

    expected = isprime(n) and multiplicative_order(2, n) == n - 1
    assert is_na_prime(n) == expected


def test_na_search_examples():
    assert na_search(4) == 5
    assert na_search(5) == 5
    assert na_search(6500000001, "next") == 6500000069
    assert na_search(12, Direction.PREVIOUS) == 11
    assert na_search(12, "closest") == 13  # 11 and 13 tie; resolve upward
    assert na_search(15, "closest") == 13
    with pytest.raises(ExtractorError):
        na_search(2, "previous")


@given(st.integers(3, 10**6), st.sampled_from(list(Direction)))
def test_na_search_lands_on_admissible(n, direction):
    p = na_search(n, direction)
    assert is_na_prime(p)
    assert na_search(p, direction) == p
    if direction is Direction.NEXT:
        assert p >= n
    elif direction is Direction.PREVIOUS:
        assert p <= n


# -- output length

def test_output_length_examples():
    assert calc_output_length(ExtractorSpec("toeplitz", 6_500_000_069, 581_295_000, Fraction(1, 10**10))) == 581_294_933
    assert calc_output_length(ExtractorSpec("circulant", 1000, 100, Fraction(1, 2**32))) == 36
    spec = ExtractorSpec("dodis", 101, 101, Fraction(1, 2**10), SecurityModel.MARKOV_QUANTUM, 101, 101)
    assert calc_output_length(spec) == 4


def test_trevisan_fixed_point():
    spec = ExtractorSpec("trevisan", 1000, 100, Fraction(1, 256))
    m = calc_output_length(spec)
    assert m == 40
    assert m <= output_bound(spec, m)
    assert m + 1 > output_bound(spec, m + 1)


def test_insufficient_entropy_reports_zero():
    assert calc_output_length(ExtractorSpec("circulant", 100, 10, Fraction(1, 2**32))) == 0
    assert calc_output_length(ExtractorSpec("trevisan", 100, 10, Fraction(1, 2**32))) == 0


def test_von_neumann_has_no_entropy_formula():
    with pytest.raises(UnsupportedModelError):
        calc_output_length(ExtractorSpec("von-neumann", 100, 50, Fraction(1, 4)))


def test_spec_validation():
    with pytest.raises(ExtractorError):
        ExtractorSpec("circulant", 10, 11, Fraction(1, 4))
    with pytest.raises(ExtractorError):
        ExtractorSpec("circulant", 10, 5, 1)
    with pytest.raises(ExtractorError):
        ExtractorSpec("circulant", 10, 5, Fraction(1, 4), QS, 11, 10)


def test_dodis_formulas():
    eps = Fraction(1, 2**10)
    n = 1019
    cs = ExtractorSpec("dodis", n, 900, eps, SecurityModel.CLASSICAL_SEEDED)
    assert calc_output_length(cs) == 900 + 1 - 20
    qs = ExtractorSpec("dodis", n, 900, eps, QS)
    with mpmath.workdps(50):
        expected = int(mpmath.floor((900 - 80 + 4 * mpmath.log(mpmath.mpf(4) / 3, 2) + 1) / 5))
    assert calc_output_length(qs) == expected
    prod = ExtractorSpec("dodis", n, 900, eps, SecurityModel.PRODUCT_TWO_SOURCE, n, 1000)
    assert calc_output_length(prod) == 900 + 1000 - n + 1 - 20


@settings(max_examples=60)
@given(st.integers(50, 5000), st.integers(1, 64), st.data())
def test_two_source_collapses_to_seeded(n1, log_eps, data):
    eps = Fraction(1, 2**log_eps)
    k1 = data.draw(st.integers(0, n1))
    for kind in ("circulant", "toeplitz"):
        seeded = calc_output_length(ExtractorSpec(kind, n1, k1, eps, QS))
        n2 = n1 + 1 if kind == "circulant" else n1 + seeded - 1
        if kind == "toeplitz" and seeded < 1:
            continue
        for model in (SecurityModel.PRODUCT_TWO_SOURCE, SecurityModel.MARKOV_QUANTUM):
            spec = ExtractorSpec(kind, n1, k1, eps, model, n2, n2)
            if kind == "circulant":
                assert calc_output_length(spec) == seeded
            else:
                # the Toeplitz two-source bound at k2 = n2 = n1 + m - 1 is exactly satisfied by m = seeded
                assert output_bound(spec) >= seeded


@settings(max_examples=60)
@given(st.sampled_from(["circulant", "dodis", "toeplitz", "trevisan"]),
       st.sampled_from(list(SecurityModel)), st.integers(20, 3000), st.integers(1, 40), st.data())
def test_monotone_in_k1_and_eps(kind, model, n1, log_eps, data):
    k1 = data.draw(st.integers(0, n1 - 1))
    n2 = n1 + 1 if kind == "circulant" else n1 if kind == "dodis" else 2 * n1
    k2 = data.draw(st.integers(n2 // 2, n2)) if not model.seeded else None
    n2 = n2 if not model.seeded else None
    eps = Fraction(1, 2**log_eps)

    def m(k1, eps):
        return calc_output_length(ExtractorSpec(kind, n1, k1, eps, model, n2, k2))

    base = m(k1, eps)
    assert base >= 0
    assert m(k1 + 1, eps) >= base
    assert m(k1, 2 * eps if 2 * eps < 1 else eps) >= base


# -- seed length

def test_seed_length_examples():
    assert calc_seed_length("toeplitz", 1_738_000_000, 41_378_264) == 1_779_378_263
    assert calc_seed_length("circulant", 6_500_000_068) == 6_500_000_069
    assert calc_seed_length("dodis", 100) == 101
    assert calc_seed_length("von-neumann", 123) == 0
    assert calc_seed_length("trevisan", 1024, 8, Fraction(1, 256)) == 5041
    with pytest.raises(ExtractorError):
        calc_seed_length("trevisan", 1024, 8)


# -- error lifts

def test_lift_two_source_error():
    eps = Fraction(1, 2**40)
    assert lift_two_source_error(eps, 100, 100, True) == eps
    assert lift_two_source_error(eps, 100, 80, True) == Fraction(1, 2**30)
    assert lift_two_source_error(eps, 100, 80, False) == Fraction(1, 2**20)
    odd = lift_two_source_error(eps, 100, 99, True)
    with mpmath.workdps(90):
        assert abs(odd - mpmath.sqrt(2) * mpmath.mpf(2) ** -40) < mpmath.mpf(10) ** -85
    with pytest.raises(ExtractorError):
        lift_two_source_error(eps, 10, 11, True)


def test_lift_markov():
    lift = lift_markov(Fraction(1, 2**10), 5, 100, 90, quantum=False)
    assert (lift.k1, lift.k2, lift.error) == (90, 80, Fraction(3, 2**10))
    q = lift_markov(Fraction(1, 2**50), 10, 100, 100, quantum=True)
    with mpmath.workdps(90):
        assert abs(q.error - mpmath.sqrt(3) * mpmath.mpf(2) ** -21) < mpmath.mpf(10) ** -85
    exact = lift_markov(Fraction(3, 2**50), 10, 100, 100, quantum=True)
    assert exact.error == Fraction(3, 2**21)
    vacuous = lift_markov(1, 4, 10, 10, quantum=False)
    assert vacuous.error == 1 and vacuous.vacuous


def test_compose_errors():
    e = Fraction(1, 2**40)
    assert compose_errors("seed-reuse", t=3, eps=e, eps_seed=e).error == Fraction(1, 2**38)
    assert compose_errors("smooth-seeded", eps=e, delta=0).error == e
    e20 = Fraction(1, 2**20)
    budget = compose_errors("smooth-two-source", eps=e20, delta1=0, delta2=0, eps1=e20, eps2=e20, k1=100, k2=50)
    assert budget == (6 * e20, 80, 30)
    with pytest.raises(ExtractorError):
        compose_errors("pipeline")


# -- suggestion

def test_suggest_branches():
    assert suggest_extractor(exchangeable=True).kind is Kind.VON_NEUMANN
    assert not suggest_extractor().possible
    rec = suggest_extractor(second_source="perfect", adversary="quantum", seed_budget=10**6, n1=1000)
    assert (rec.kind, rec.model) == (Kind.CIRCULANT, QS)
    rec = suggest_extractor(second_source="weak", adversary="classical")
    assert (rec.kind, rec.model) == (Kind.DODIS, SecurityModel.PRODUCT_TWO_SOURCE)
    rec = suggest_extractor(second_source="weak", adversary="quantum")
    assert (rec.kind, rec.model) == (Kind.CIRCULANT, SecurityModel.MARKOV_QUANTUM)


def test_suggest_short_seed():
    n1, k1, eps = 10**6, 200, Fraction(1, 2**20)
    m = calc_output_length(ExtractorSpec("trevisan", n1, k1, eps))
    d = calc_seed_length("trevisan", n1, m, eps)
    assert 0 < d < n1
    rec = suggest_extractor(second_source="perfect", seed_budget=d, n1=n1, k1=k1, eps=eps)
    assert rec.kind is Kind.TREVISAN
    below = suggest_extractor(second_source="perfect", seed_budget=d - 1, n1=n1, k1=k1, eps=eps)
    assert below.kind is Kind.CIRCULANT
    tiny = suggest_extractor(second_source="perfect", seed_budget=10, n1=n1, k1=k1, eps=eps)
    assert tiny.kind is Kind.CIRCULANT and not tiny.model.seeded
    with pytest.raises(ExtractorError):
        suggest_extractor(second_source="perfect", adversary="martian")
