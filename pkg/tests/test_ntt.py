import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from randext.bits import BitString, bits
from randext.errors import CapacityError, ExtractorError
from randext.ntt import (
    BIG_PRIME,
    SMALL_PRIME,
    ModulusChoice,
    build_plan,
    cyclic_convolve_mod2,
    cyclic_size,
    ntt_forward,
    ntt_inverse,
    select_modulus,
)
from randext.oracles import naive_convolve

BOTH = [ModulusChoice.SMALL, ModulusChoice.BIG]


@pytest.mark.parametrize("choice", BOTH)
def test_plan_roots_have_exact_order(choice):
    for log in (1, 5, 16):
        plan = build_plan(1 << log, choice)
        p = plan.modulus
        assert pow(plan.root, plan.size, p) == 1
        assert pow(plan.root, plan.size // 2, p) == p - 1
        assert plan.root * plan.inv_root % p == 1
        assert plan.size * plan.inv_size % p == 1


def test_plan_rejects_bad_sizes():
    with pytest.raises(CapacityError):
        build_plan(12)
    with pytest.raises(CapacityError):
        build_plan(1 << 31, ModulusChoice.SMALL)


@pytest.mark.parametrize("choice", BOTH)
def test_forward_matches_definition(choice, rng):
    plan = build_plan(16, choice)
    p = plan.modulus
    v = rng.integers(0, p, 16, dtype=np.uint64)
    expected = [sum(int(v[j]) * pow(plan.root, i * j, p) for j in range(16)) % p for i in range(16)]
    assert ntt_forward(v, plan).tolist() == expected


@pytest.mark.parametrize("choice", BOTH)
def test_round_trip(choice, rng):
    plan = build_plan(1 << 10, choice)
    v = rng.integers(0, plan.modulus, plan.size, dtype=np.uint64)
    assert np.array_equal(ntt_inverse(ntt_forward(v, plan), plan), v)
    assert np.array_equal(ntt_forward(ntt_inverse(v, plan), plan), v)


def test_residue_validation():
    plan = build_plan(4)
    with pytest.raises(ExtractorError):
        ntt_forward([0, 0, 0], plan)
    with pytest.raises(ExtractorError):
        ntt_forward([SMALL_PRIME, 0, 0, 0], plan)


def test_big_modulus_arithmetic_near_the_top(rng):
    plan = build_plan(8, ModulusChoice.BIG)
    v = np.full(8, BIG_PRIME - 1, dtype=np.uint64)
    expected = [sum((BIG_PRIME - 1) * pow(plan.root, i * j, BIG_PRIME) for j in range(8)) % BIG_PRIME
                for i in range(8)]
    assert ntt_forward(v, plan).tolist() == expected


def test_cyclic_size():
    assert [cyclic_size(n) for n in (1, 2, 3, 5, 8, 9)] == [1, 4, 8, 16, 16, 32]


def test_select_modulus():
    assert select_modulus(100) is ModulusChoice.SMALL
    assert select_modulus(2**29 + 1) is ModulusChoice.BIG
    assert select_modulus(100, "big") is ModulusChoice.BIG
    with pytest.raises(CapacityError):
        select_modulus(2**30, "small")
    with pytest.raises(CapacityError):
        select_modulus(2**41)


def test_convolution_examples():
    assert cyclic_convolve_mod2(bits("110"), bits("101")) == bits("011")
    assert naive_convolve([1, 1, 0], [1, 0, 1]) == [2, 1, 1]
    assert cyclic_convolve_mod2(bits("100"), bits("011")) == bits("011")
    assert cyclic_convolve_mod2(bits("1"), bits("1")) == bits("1")


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 300), st.integers(0, 2**32 - 1), st.sampled_from(BOTH))
def test_matches_direct_sum(n, seed, choice):
    rng = np.random.default_rng(seed)
    u, v = BitString.random(n, rng), BitString.random(n, rng)
    expected = [c % 2 for c in naive_convolve(u.to_list(), v.to_list())]
    assert cyclic_convolve_mod2(u, v, choice).to_list() == expected


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 200), st.integers(0, 2**32 - 1))
def test_convolution_is_bilinear(n, seed):
    rng = np.random.default_rng(seed)
    u, v, w = (BitString.random(n, rng) for _ in range(3))
    assert cyclic_convolve_mod2(u, v ^ w) == cyclic_convolve_mod2(u, v) ^ cyclic_convolve_mod2(u, w)
    assert cyclic_convolve_mod2(u, v) == cyclic_convolve_mod2(v, u)


def test_length_mismatch():
    with pytest.raises(ExtractorError):
        cyclic_convolve_mod2(bits("10"), bits("101"))
