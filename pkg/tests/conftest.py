import itertools

import pytest


def all_partial_matchings(n):
    """Every partial matching of [n], by filtering all subsets of pairs."""
    pairs = list(itertools.combinations(range(1, n + 1), 2))

    def rec(start, used, chosen):
        yield list(chosen)
        for idx in range(start, len(pairs)):
            i, j = pairs[idx]
            if i in used or j in used:
                continue
            chosen.append((i, j))
            yield from rec(idx + 1, used | {i, j}, chosen)
            chosen.pop()

    yield from rec(0, frozenset(), [])


def clique_crossing_number(arcs):
    def crosses(a, b):
        (i, j), (r, s) = sorted([a, b])
        return i < r < j < s

    best = 0
    for size in range(1, len(arcs) + 1):
        if any(all(crosses(a, b) for a, b in itertools.combinations(sub, 2))
               for sub in itertools.combinations(arcs, size)):
            best = size
        else:
            break
    return best


@pytest.fixture(scope="session")
def brute():
    return {n: list(all_partial_matchings(n)) for n in range(0, 9)}
