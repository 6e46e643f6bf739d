import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from randext.bits import bits
from randext.errors import EnumerationLimitError
from randext.oracles import (
    collision_probability,
    flat_source,
    naive_convolve,
    naive_extract,
    naive_trevisan_params,
    shift_matrix,
    statistical_distance_strong,
    toeplitz_matrix,
)


def test_naive_convolve_examples():
    assert naive_convolve([1, 0, 0], [0, 1, 1]) == [0, 1, 1]
    assert naive_convolve([1, 1, 0], [1, 0, 1]) == [2, 1, 1]
    assert naive_convolve([0] * 4, [1] * 4) == [0] * 4
    with pytest.raises(ValueError):
        naive_convolve([1], [1, 0])


def test_matrices_match_displayed_layouts():
    assert shift_matrix([1, 1, 0], 3) == [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
    # first column y0..y_{m-1}; first row y0, y_{n+m-2}, ..., y_m
    assert toeplitz_matrix([0, 1, 2, 3, 4], 3, 3) == [[0, 4, 3], [1, 0, 4], [2, 1, 0]]


def test_naive_extract_examples():
    assert naive_extract("dodis", bits("110"), bits("101"), 2) == bits("11")
    assert naive_extract("circulant", bits("10"), bits("101"), 2) == bits("10")
    assert naive_extract("toeplitz", bits("000"), bits("10111"), 3) == bits("000")
    with pytest.raises(ValueError):
        naive_extract("circulant", bits("10"), bits("10"), 1)
    with pytest.raises(ValueError):
        naive_extract("trevisan", bits("10"), bits("10"), 1)


def _slow_distance(kind, support, n1, m):
    """Dictionary-based enumeration kept deliberately free of numpy."""
    n2 = {"circulant": n1 + 1, "dodis": n1, "toeplitz": n1 + m - 1}[kind]
    p = Fraction(1, len(support))
    total = Fraction(0)
    for y in itertools.product((0, 1), repeat=n2):
        counts = {}
        for x in support:
            xb = [(x >> i) & 1 for i in range(n1)]
            z = tuple(naive_extract(kind, xb, list(y), m).to_list())
            counts[z] = counts.get(z, 0) + p
        for z in itertools.product((0, 1), repeat=m):
            total += abs(counts.get(z, 0) - Fraction(1, 2**m))
    return total / (2 * 2**n2)


@pytest.mark.parametrize("kind,n1", [("circulant", 2), ("dodis", 3), ("toeplitz", 3), ("circulant", 4)])
def test_distance_matches_slow_enumeration(kind, n1):
    rng = np.random.default_rng(n1)
    for size in (1, 2, 2 ** n1 - 1, 2 ** n1):
        support = sorted(rng.choice(2**n1, size, replace=False).tolist())
        for m in range(1, min(n1, 3) + 1):
            fast = statistical_distance_strong(kind, flat_source(support, n1), n1, m)
            assert fast == _slow_distance(kind, support, n1, m)


def test_distance_hand_value_n3():
    # circulant n = 3: x' = [x0, x1, 0]; source misses x = 11, m = 1
    # output bit = x0 y0 + x1 y1; for each y count the outputs over x in {00, 10, 01}
    # y=00: all 0 -> |1-1/2|+|0-1/2| = 1; y=10, 01: two 0s one 1 -> 1/3; y=11 -> 1/3
    expected = Fraction(1, 2 * 8) * 2 * (1 + 3 * Fraction(1, 3))
    assert statistical_distance_strong("circulant", flat_source([0, 1, 2], 2), 2, 1) == expected


def test_distance_edge_cases():
    assert statistical_distance_strong("dodis", flat_source([1, 2], 3), 3, 0) == 0
    src = {(1, 0, 0): Fraction(1, 3), (0, 1, 0): Fraction(2, 3)}
    assert isinstance(statistical_distance_strong("dodis", src, 3, 2), Fraction)
    with pytest.raises(ValueError):
        statistical_distance_strong("dodis", {(1, 0, 0): Fraction(1, 2)}, 3, 1)
    with pytest.raises(EnumerationLimitError):
        statistical_distance_strong("dodis", flat_source([1], 14), 14, 1)


def test_uniform_source_distance_comes_only_from_singular_seeds():
    # each seed y induces a linear map; for uniform x the output is uniform iff the map is onto
    n1, m = 4, 4
    dist = statistical_distance_strong("circulant", flat_source(range(16), n1), n1, m)
    expected = Fraction(0)
    for y in itertools.product((0, 1), repeat=n1 + 1):
        images = {tuple(naive_extract("circulant", [(x >> i) & 1 for i in range(n1)], list(y), m).to_list())
                  for x in range(16)}
        # image of a linear map is a subspace of size |images|; each point has mass 1/|images|
        expected += Fraction(1, 2) * (len(images) * (Fraction(1, len(images)) - Fraction(1, 2**m))
                                      + (2**m - len(images)) * Fraction(1, 2**m))
    assert dist == expected / 2 ** (n1 + 1)
    assert dist <= Fraction(1)


def test_collision_probability_examples():
    assert collision_probability("circulant", [1, 0], [0, 0], 0) == 1
    p = collision_probability("circulant", [1, 0], [1, 1], 2)
    assert p <= Fraction(1, 4)
    with pytest.raises(ValueError):
        collision_probability("circulant", [1, 0], [1, 0], 1)


@settings(max_examples=20)
@given(st.integers(1, 6), st.integers(1, 6), st.data())
def test_toeplitz_is_two_universal(n, m, data):
    x = data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    xt = data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    if x == xt:
        return
    assert collision_probability("toeplitz", x, xt, m) == Fraction(1, 2**m)


def test_naive_trevisan_params():
    par = naive_trevisan_params(1024, 8, Fraction(1, 256))
    assert (par["l"], par["t"], par["s"]) == (34, 71, 31)
    par = naive_trevisan_params(64, 4, Fraction(1, 16))
    assert (par["l"], par["t"], par["f"]) == (20, 41, (1 << 20) | 0b1001)


def test_naive_convolve_matches_double_loop(rng):
    for n in (1, 2, 5, 17, 64):
        u = rng.integers(0, 3, n).tolist()
        v = rng.integers(0, 3, n).tolist()
        loop = [sum(u[(i - j) % n] * v[j] for j in range(n)) for i in range(n)]
        assert naive_convolve(u, v) == loop
