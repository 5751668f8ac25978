"""Diagrams over [n] and brute-force counting oracles.

Everything here is deliberately naive: it walks the actual combinatorial
objects, so the formula-based counters elsewhere in the package can be
checked against it.  Practical up to n of about 16.
"""
from __future__ import annotations

from bisect import bisect_left
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Optional

Arc = tuple[int, int]


class InvalidParameterError(ValueError):
    pass


@dataclass(frozen=True)
class Diagram:
    n: int
    arcs: frozenset[Arc] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "arcs", frozenset(tuple(a) for a in self.arcs))
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        seen: set[int] = set()
        for i, j in self.arcs:
            if not 1 <= i < j <= self.n:
                raise ValueError(f"arc {(i, j)} out of range for n={self.n}")
            if i in seen or j in seen:
                raise ValueError(f"vertex shared by two arcs at {(i, j)}")
            seen.update((i, j))

    def sorted_arcs(self) -> list[Arc]:
        return sorted(self.arcs)

    def isolated(self) -> int:
        return self.n - 2 * len(self.arcs)

    def lengths(self) -> list[int]:
        return [j - i for i, j in self.arcs]

    def reflect(self) -> Diagram:
        n = self.n
        return Diagram(n, frozenset((n + 1 - j, n + 1 - i) for i, j in self.arcs))


@dataclass(frozen=True)
class DiagramFilter:
    k: int
    lambda_min: int = 1
    require_perfect: bool = False
    isolated_count: Optional[int] = None

    def __post_init__(self):
        if self.k < 2:
            raise InvalidParameterError(f"k must be >= 2, got {self.k}")
        if self.lambda_min < 1:
            raise InvalidParameterError(f"lambda_min must be >= 1, got {self.lambda_min}")
        if self.require_perfect and self.isolated_count not in (None, 0):
            raise InvalidParameterError("a perfect matching has no isolated vertices")
        if self.isolated_count is not None and self.isolated_count < 0:
            raise InvalidParameterError("isolated_count must be nonnegative")

    @property
    def target_isolated(self) -> Optional[int]:
        return 0 if self.require_perfect else self.isolated_count


def _longest_increasing(seq: Iterable[int]) -> int:
    tails: list[int] = []
    for v in seq:
        pos = bisect_left(tails, v)
        if pos == len(tails):
            tails.append(v)
        else:
            tails[pos] = v
    return len(tails)


def crossing_number(d: Diagram) -> int:
    """Size of the largest set of mutually crossing arcs.

    A mutually crossing family has every left end before every right end,
    so it is stabbed by its last left end c; among arcs spanning c it is an
    increasing run of right ends (ordered by left end).
    """
    arcs = d.sorted_arcs()
    best = 0
    for c, _ in arcs:
        rights = [j for i, j in arcs if i <= c < j]
        best = max(best, _longest_increasing(rights))
    return best


def _crosses_with(arcs: list[Arc], i: int, j: int) -> int:
    # arcs all have left end < i; those crossing (i, j) satisfy p < i < q < j
    return 1 + _longest_increasing(q for p, q in arcs if i < q < j)


def iter_diagrams(n: int, f: DiagramFilter) -> Iterable[Diagram]:
    """All diagrams passing ``f``, in lexicographic order of sorted arc lists."""
    if n < 0:
        raise InvalidParameterError("n must be nonnegative")
    target = f.target_isolated
    used = [False] * (n + 2)
    arcs: list[Arc] = []

    def free_between(lo: int, hi: int) -> int:
        return sum(1 for v in range(lo, hi) if not used[v])

    def rec(last: int, isolated: int):
        # stop here: every free vertex after `last` stays isolated
        total = isolated + free_between(last + 1, n + 1)
        if target is None or total == target:
            yield Diagram(n, frozenset(arcs))
        skipped = isolated
        for p in range(last + 1, n + 1):
            if used[p]:
                continue
            if target is not None and skipped > target:
                return
            for q in range(p + f.lambda_min, n + 1):
                if used[q]:
                    continue
                if _crosses_with(arcs, p, q) >= f.k:
                    continue
                used[p] = used[q] = True
                arcs.append((p, q))
                yield from rec(p, skipped)
                arcs.pop()
                used[p] = used[q] = False
            skipped += 1

    yield from rec(0, 0)


def enumerate_diagrams(
    n: int, f: DiagramFilter, visitor: Optional[Callable[[Diagram], None]] = None
) -> int:
    count = 0
    for d in iter_diagrams(n, f):
        count += 1
        if visitor is not None:
            visitor(d)
    return count


@lru_cache(maxsize=None)
def _count_cached(n: int, f: DiagramFilter) -> int:
    return sum(1 for _ in iter_diagrams(n, f))


def count(n: int, k: int, lambda_min: int = 1, *, perfect: bool = False,
          isolated: Optional[int] = None) -> int:
    """Memoized oracle count; see :func:`iter_diagrams`."""
    return _count_cached(n, DiagramFilter(k, lambda_min, perfect, isolated))


@lru_cache(maxsize=None)
def short_arc_profile(n: int) -> Counter:
    """Counter of (b1, b2, b3) over all placements of arcs of length 1, 2, 3 on [n].

    Arcs in a placement are vertex-disjoint; crossings are allowed.
    """
    profile: Counter = Counter()
    used = [False] * (n + 4)

    def rec(v: int, b: list[int]):
        if v > n:
            profile[tuple(b)] += 1
            return
        if used[v]:
            rec(v + 1, b)
            return
        rec(v + 1, b)
        for length in (1, 2, 3):
            w = v + length
            if w <= n and not used[w]:
                used[w] = True
                b[length - 1] += 1
                rec(v + 1, b)
                b[length - 1] -= 1
                used[w] = False

    rec(1, [0, 0, 0])
    return profile


def count_short_arc_placements(n: int, b1: int, b2: int, b3: int) -> int:
    if min(n, b1, b2, b3) < 0:
        raise InvalidParameterError("arguments must be nonnegative")
    return short_arc_profile(n)[(b1, b2, b3)]


def count_placements_max_length(n: int, b: int, max_length: int) -> int:
    """Placements of b disjoint arcs, all of length <= max_length (max_length <= 3)."""
    if not 1 <= max_length <= 3:
        raise InvalidParameterError("max_length must be 1, 2 or 3")
    return sum(
        c for (b1, b2, b3), c in short_arc_profile(n).items()
        if b1 + b2 + b3 == b and (max_length >= 2 or b2 == 0) and (max_length >= 3 or b3 == 0)
    )
