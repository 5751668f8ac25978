import math

import pytest

from rnaknots import diagrams
from rnaknots.matchings import double_factorial_odd
from rnaknots.shortarcs import (
    aggregate_multivariate, check_phi_recurrence, lambda_multivariate, lambda_paper_recursion,
    lambda_positional_dp, recursion_report, phi_series, printed_seed,
)


@pytest.fixture(scope="module")
def dp():
    return lambda_positional_dp(30)


def test_dp_matches_oracle(dp):
    for n in range(15):
        for b in range(n // 2 + 1):
            assert dp(n, b) == diagrams.count_placements_max_length(n, b, 3), (n, b)


def test_dp_length_two_matches_oracle():
    t = lambda_positional_dp(12, max_length=2)
    for n in range(13):
        for b in range(n // 2 + 1):
            assert t(n, b) == diagrams.count_placements_max_length(n, b, 2)


def test_examples(dp):
    assert dp(2, 1) == 1
    assert dp(4, 2) == 3
    assert dp(6, 3) == 7
    assert dp(5, 1) == 9
    assert dp(7, 1) == 15


def test_table_invariants(dp):
    for n in range(31):
        assert dp(n, 0) == 1
        assert dp(n, n // 2 + 1) == 0
        for b in range(n // 2 + 1):
            assert 0 <= dp(n, b) <= math.comb(n, 2 * b) * double_factorial_odd(b)
    for n in range(3, 31):
        assert dp(n, 1) == 3 * n - 6


def test_multivariate():
    mv = lambda_multivariate(16)
    for n in range(4, 17):
        assert mv[n][(0, 0, 0)] == 1
        assert mv[n][(1, 0, 0)] == n - 1
        assert mv[n][(0, 1, 0)] == n - 2
        assert mv[n][(0, 0, 1)] == n - 3
    assert mv[4][(1, 0, 1)] == 1
    assert mv[5][(1, 0, 0)] == 4 and mv[5][(0, 1, 0)] == 3 and mv[5][(0, 0, 1)] == 2
    for n in range(11):
        for (b1, b2, b3), v in mv[n].items():
            assert v == diagrams.count_short_arc_placements(n, b1, b2, b3)
    agg = aggregate_multivariate(mv)
    dp = lambda_positional_dp(16)
    assert all(agg(n, b) == dp(n, b) for n in range(17) for b in range(n // 2 + 1))


def test_printed_recursion_deviates_only_through_seed():
    report = recursion_report(30)
    assert report.confined_to_seeds
    assert [(n, b) for n, b, *_ in report.seed_deviations] == [(2, 1)]
    assert printed_seed(2, 1) == 0
    assert report.propagated_deviations, "the verbatim table should differ"
    assert "(2, 1)" in report.describe()


def test_printed_recursion_examples():
    t = lambda_paper_recursion(12)
    assert t(7, 1) == 15
    assert all(t(n, 0) == 1 for n in range(13))
    fixed = lambda_paper_recursion(30, seed="oracle")
    dp = lambda_positional_dp(30)
    assert all(fixed(n, b) == dp(n, b) for n in range(31) for b in range(n // 2 + 1))


def test_phi_series():
    for n in range(1, 8):
        s = phi_series(n, 6).series
        assert s[0] == 1
        assert s[1] == 3 * n


@pytest.mark.parametrize("n", range(1, 9))
def test_phi_recurrence_and_closed_form(n):
    r = check_phi_recurrence(n, 12)
    assert r.recurrence_holds and r.closed_form_holds, r.describe()


def test_phi_recurrence_fails_at_zero():
    assert not check_phi_recurrence(0, 12).recurrence_holds


def test_phi_printed_weights_fail():
    r = check_phi_recurrence(5, 10)
    assert r.closed_form_holds
    assert r.printed_closed_form_mismatch is not None
