import pytest
from hypothesis import given, settings, strategies as st

from rnaknots.diagrams import (
    Diagram, DiagramFilter, InvalidParameterError, count, count_placements_max_length,
    count_short_arc_placements, crossing_number, enumerate_diagrams, iter_diagrams,
)
from rnaknots.matchings import double_factorial_odd

from conftest import clique_crossing_number


def test_crossing_number_examples():
    assert crossing_number(Diagram(7, {(1, 5), (2, 6), (3, 7)})) == 3
    assert crossing_number(Diagram(5)) == 0
    assert crossing_number(Diagram(4, {(1, 4), (2, 3)})) == 1


def test_diagram_rejects_shared_vertex():
    with pytest.raises(ValueError):
        Diagram(4, {(1, 3), (3, 4)})
    with pytest.raises(ValueError):
        Diagram(3, {(2, 5)})


@st.composite
def diagrams(draw, max_n=10):
    n = draw(st.integers(0, max_n))
    verts = draw(st.permutations(list(range(1, n + 1))))
    m = draw(st.integers(0, n // 2))
    arcs = {tuple(sorted(verts[2 * i: 2 * i + 2])) for i in range(m)}
    return Diagram(n, arcs)


@given(diagrams())
@settings(max_examples=300, deadline=None)
def test_crossing_number_matches_clique_search(d):
    assert crossing_number(d) == clique_crossing_number(d.sorted_arcs())


@given(diagrams())
@settings(max_examples=200, deadline=None)
def test_crossing_number_reflection_invariant(d):
    assert crossing_number(d.reflect()) == crossing_number(d)


@pytest.mark.parametrize("k", [2, 3, 4])
@pytest.mark.parametrize("lam", [1, 2, 3, 4])
def test_enumerate_matches_subset_brute_force(brute, k, lam):
    for n, matchings in brute.items():
        want = sum(1 for arcs in matchings
                   if all(j - i >= lam for i, j in arcs) and clique_crossing_number(arcs) < k)
        assert count(n, k, lam) == want, (n, k, lam)


def test_enumerate_isolated_and_perfect_filters(brute):
    for n, matchings in brute.items():
        for ell in range(n + 1):
            want = sum(1 for arcs in matchings
                       if n - 2 * len(arcs) == ell and clique_crossing_number(arcs) < 3)
            assert count(n, 3, isolated=ell) == want
        assert count(n, 3, perfect=True) == count(n, 3, isolated=0)


def test_enumerate_examples():
    assert count(6, 4, 4) == 5
    assert count(4, 4, 4) == 1
    assert count(7, 3, 4) == 14
    assert count(6, 2, perfect=True) == 5
    assert count(0, 2) == 1


def test_visitor_order_is_lexicographic():
    seen = []
    total = enumerate_diagrams(7, DiagramFilter(3, 2), lambda d: seen.append(d.sorted_arcs()))
    assert total == len(seen)
    assert seen == sorted(seen)
    assert len({tuple(s) for s in seen}) == total


def test_invalid_parameters():
    with pytest.raises(InvalidParameterError):
        DiagramFilter(1)
    with pytest.raises(InvalidParameterError):
        DiagramFilter(3, lambda_min=0)
    with pytest.raises(InvalidParameterError):
        DiagramFilter(3, require_perfect=True, isolated_count=2)


@pytest.mark.parametrize("n", range(1, 13))
def test_monotone_in_k_and_lambda(n):
    for lam in (1, 2, 3, 4):
        vals = [count(n, k, lam) for k in (2, 3, 4, 5)]
        assert vals == sorted(vals)
    for k in (2, 3, 4, 5):
        vals = [count(n, k, lam) for lam in (1, 2, 3, 4)]
        assert vals == sorted(vals, reverse=True)


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_perfect_matchings_below_k_arcs(k):
    for m in range(k):
        assert count(2 * m, k, perfect=True) == double_factorial_odd(m)


def test_short_arc_placements():
    assert [count_short_arc_placements(5, *b) for b in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]] == [4, 3, 2]
    assert sum(count_short_arc_placements(4, b1, b2, 2 - b1 - b2)
               for b1 in range(3) for b2 in range(3 - b1)) == 3
    for n in range(8):
        assert count_short_arc_placements(n, 0, 0, 0) == 1
    assert count_short_arc_placements(4, 1, 0, 1) == 1  # {(1,4),(2,3)}
    assert count_placements_max_length(5, 1, 3) == 9


def test_short_arc_placements_match_subset_brute_force(brute):
    for n, matchings in brute.items():
        for b1 in range(3):
            for b3 in range(3):
                want = sum(1 for arcs in matchings
                           if sorted(j - i for i, j in arcs) == [1] * b1 + [3] * b3)
                assert count_short_arc_placements(n, b1, 0, b3) == want
