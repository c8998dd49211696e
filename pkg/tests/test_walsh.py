import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bentparity.core import AffineFunctionSpec, BooleanFunction, hamming_weight
from bentparity.oracle import naive_nonlinearity, naive_walsh, naive_walsh_batch
from bentparity.walsh import (
    bent_nonlinearity,
    first_non_flat_position,
    fwht,
    is_bent,
    nonlinearity,
    signed,
    summarize,
    walsh_spectrum,
)

from conftest import random_function


def bit_tables(max_n):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.integers(0, 1), min_size=1 << n, max_size=1 << n)
    )


def test_spectrum_x1x2(x1x2):
    naive = [naive_walsh(x1x2, a) for a in range(4)]
    assert naive == [2, 2, 2, -2]
    assert list(walsh_spectrum(x1x2).values) == naive


def test_spectrum_of_zero():
    spec = walsh_spectrum(BooleanFunction.zeros(3))
    assert list(spec.values) == [8, 0, 0, 0, 0, 0, 0, 0]


@pytest.mark.parametrize("a", [0, 1, 5, 15])
def test_spectrum_of_linear_function(a):
    spec = walsh_spectrum(AffineFunctionSpec(4, a, 0).table())
    expected = np.zeros(16, dtype=int)
    expected[a] = 16
    assert np.array_equal(spec.values, expected)


@settings(max_examples=200)
@given(bit_tables(9))
def test_parseval_and_weight_relation(bits):
    f = BooleanFunction.from_bits(bits)
    spec = walsh_spectrum(f)
    assert spec.parseval_sum() == 1 << (2 * f.n)
    assert spec[0] == f.size - 2 * hamming_weight(f)
    assert spec.max_abs() <= f.size


def test_fwht_matches_naive_exhaustive_n_le_4():
    for n in (1, 2, 3, 4):
        ids = np.arange(1 << (1 << n), dtype=np.int64)
        tabs = ((ids[:, None] >> np.arange(1 << n)) & 1).astype(np.uint8)
        assert np.array_equal(fwht(signed(tabs)), naive_walsh_batch(tabs, n))


@pytest.mark.parametrize("n", [6, 8, 10])
def test_fwht_matches_naive_random(n):
    rng = np.random.default_rng(100 + n)
    tabs = rng.integers(0, 2, size=(100, 1 << n), dtype=np.uint8)
    assert np.array_equal(fwht(signed(tabs)), naive_walsh_batch(tabs, n))


def test_fwht_matches_scalar_naive_on_a_sample():
    rng = np.random.default_rng(3)
    f = random_function(rng, 7)
    spec = walsh_spectrum(f)
    for a in rng.integers(0, 128, 10):
        assert spec[int(a)] == naive_walsh(f, int(a))


def test_nonlinearity_examples(x1x2, x1x2_x3x4):
    assert nonlinearity(x1x2) == 1 == bent_nonlinearity(2)
    assert nonlinearity(x1x2_x3x4) == 6 == bent_nonlinearity(4)
    for spec in (AffineFunctionSpec(5, 9, 1), AffineFunctionSpec(5, 0, 0)):
        assert nonlinearity(spec.table()) == 0


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_nonlinearity_matches_min_distance_exhaustive(n):
    if n == 4:
        values = range(0, 1 << 16, 97)  # the full sweep lives in the acceptance suite
    else:
        values = range(1 << (1 << n))
    for v in values:
        f = BooleanFunction.from_int(v, n)
        assert nonlinearity(f) == naive_nonlinearity(f)


def test_is_bent_examples(x1x2, x1x2_x3x4):
    assert is_bent(x1x2)
    assert is_bent(x1x2_x3x4)
    assert all(abs(v) == 4 for v in walsh_spectrum(x1x2_x3x4).values)
    assert not is_bent(BooleanFunction.zeros(4))
    assert first_non_flat_position(BooleanFunction.zeros(4)) == 0
    assert first_non_flat_position(x1x2) is None


def test_odd_n_is_never_bent():
    rng = np.random.default_rng(5)
    for n in (1, 3, 5):
        for _ in range(20):
            assert not is_bent(random_function(rng, n))


def test_bent_iff_nonlinearity_bound():
    for n in (2, 4):
        for v in range(0, 1 << (1 << n), 1 if n == 2 else 13):
            f = BooleanFunction.from_int(v, n)
            assert is_bent(f) == (nonlinearity(f) == bent_nonlinearity(n))


def test_summary(x1x2_x3x4):
    s = summarize(x1x2_x3x4)
    assert (s.weight, s.max_abs, s.nonlinearity, s.bent) == (6, 4, 6, True)
