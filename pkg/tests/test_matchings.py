import math
from fractions import Fraction

import pytest

from rnaknots import diagrams
from rnaknots.matchings import (
    bessel_series, count_matchings_determinant, count_matchings_walk, count_partial_matchings,
    double_factorial_odd, matching_ogf, matching_table, partial_matching_ogf_composed,
)
from rnaknots.series import Series


def catalan(n):
    return math.comb(2 * n, n) // (n + 1)


def test_double_factorial():
    assert [double_factorial_odd(n) for n in range(6)] == [1, 1, 3, 15, 105, 945]


def test_catalan_for_k2():
    assert count_matchings_walk(2, 15).values == tuple(catalan(n) for n in range(16))


def test_examples():
    assert count_matchings_walk(3, 3)[3] == 14
    assert count_matchings_walk(2, 3)[3] == 5


@pytest.mark.parametrize("k", range(2, 10))
def test_backends_agree(k):
    assert count_matchings_walk(k, 30).values == count_matchings_determinant(k, 30).values


@pytest.mark.parametrize("k", range(2, 8))
def test_small_n_all_matchings(k):
    t = matching_table(k, k + 2)
    for n in range(k):
        assert t[n] == double_factorial_odd(n)
    assert t[k] < double_factorial_odd(k)


def test_walk_matches_oracle():
    for k in (2, 3, 4):
        t = count_matchings_walk(k, 5)
        for n in range(6):
            assert t[n] == diagrams.count(2 * n, k, perfect=True)


@pytest.mark.parametrize("k", range(2, 8))
def test_column_monotone(k):
    a, b = count_matchings_walk(k, 20), count_matchings_walk(k + 1, 20)
    for n in range(21):
        assert a[n] <= b[n] <= double_factorial_odd(n)


def test_ogf_is_even():
    F = matching_ogf(4, 20)
    assert all(F[i] == 0 for i in range(1, 21, 2))
    assert F[0] == 1 and F[6] == count_matchings_walk(4, 3)[3]


@pytest.mark.parametrize("k", range(2, 7))
def test_partial_matching_series_identity(k):
    direct = Series(count_partial_matchings(k, 30), 30)
    assert partial_matching_ogf_composed(k, 30) == direct


def test_partial_matchings_match_oracle():
    for k in (2, 3, 4):
        M = count_partial_matchings(k, 10)
        assert list(M) == [diagrams.count(n, k) for n in range(11)]
    assert count_partial_matchings(2, 4)[4] == 9  # Motzkin


def test_bessel_series_coefficients():
    s = bessel_series(1, 7)
    # I_1(2z) = sum z^(2j+1) / (j! (j+1)!)
    assert [s[i] for i in range(8)] == [0, 1, 0, Fraction(1, 2), 0, Fraction(1, 12), 0, Fraction(1, 144)]


def test_invalid_k():
    with pytest.raises(ValueError):
        count_matchings_walk(1, 5)
