"""k-noncrossing perfect matchings f_k(2n) and partial matchings M_k(n).

Two independent routes to f_k(2n):

* ``walk``: closed lattice walks in the Weyl chamber a_1 >= ... >= a_{k-1} >= 0
  (oscillating tableaux with at most k-1 rows).
* ``determinant``: the exponential generating function equals
  det[I_{i-j}(2z) - I_{i+j}(2z)] over i, j = 1..k-1 with hyperbolic Bessel
  series I_r(2z) = sum_j z^(2j+r) / (j! (r+j)!).
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .series import Series, geometric, z_series


@dataclass(frozen=True)
class MatchingTable:
    k: int
    values: tuple[int, ...]  # values[n] = f_k(2n)
    backend: str

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> int:
        return self.values[n]


def _check_k(k: int, n_max: int):
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")


@lru_cache(maxsize=None)
def pascal(n_max: int) -> tuple[tuple[int, ...], ...]:
    rows = [(1,)]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        rows.append(tuple([1] + [prev[i - 1] + prev[i] for i in range(1, n)] + [1]))
    return tuple(rows)


def binom(n: int, r: int) -> int:
    if r < 0 or r > n or n < 0:
        return 0
    return pascal(n)[n][r]


def double_factorial_odd(n: int) -> int:
    """(2n-1)!!, the number of perfect matchings of [2n]."""
    out = 1
    for i in range(1, 2 * n, 2):
        out *= i
    return out


@lru_cache(maxsize=None)
def count_matchings_walk(k: int, n_max: int) -> MatchingTable:
    _check_k(k, n_max)
    dim = k - 1
    total = 2 * n_max
    origin = (0,) * dim
    states: dict[tuple[int, ...], int] = {origin: 1}
    values = [1]
    for step in range(1, total + 1):
        budget = total - step
        nxt: dict[tuple[int, ...], int] = defaultdict(int)
        for s, c in states.items():
            for i in range(dim):
                up = s[i] + 1
                # |a| must be able to return to 0 within the remaining steps
                if (i == 0 or up <= s[i - 1]) and sum(s) + 1 <= budget:
                    nxt[s[:i] + (up,) + s[i + 1:]] += c
                down = s[i] - 1
                if down >= 0 and (i == dim - 1 or down >= s[i + 1]):
                    nxt[s[:i] + (down,) + s[i + 1:]] += c
        states = nxt
        if step % 2 == 0:
            values.append(states.get(origin, 0))
    return MatchingTable(k, tuple(values), "walk")


def bessel_series(r: int, order: int) -> Series:
    """I_r(2z) truncated at z^order (r may be negative; I_{-r} = I_r)."""
    r = abs(r)
    coeffs = [Fraction(0)] * (order + 1)
    j = 0
    while 2 * j + r <= order:
        coeffs[2 * j + r] = Fraction(1, factorial(j) * factorial(r + j))
        j += 1
    return Series(coeffs, order)


def series_determinant(matrix: list[list[Series]]) -> Series:
    """Determinant of a square matrix of series whose diagonal entries are units.

    Elimination without pivoting stays inside the power series ring when the
    matrix reduces to an invertible one at z = 0 with nonzero leading minors.
    """
    m = [row[:] for row in matrix]
    size = len(m)
    det = Series.constant(1, m[0][0].order) if size else Series.constant(1, 0)
    for c in range(size):
        pivot = m[c][c]
        det = det * pivot
        inv = pivot.reciprocal()
        for r in range(c + 1, size):
            if not any(m[r][c].coeffs):
                continue
            factor = m[r][c] * inv
            for j in range(c + 1, size):
                m[r][j] = m[r][j] - factor * m[c][j]
    return det


@lru_cache(maxsize=None)
def count_matchings_determinant(k: int, n_max: int) -> MatchingTable:
    _check_k(k, n_max)
    order = 2 * n_max
    size = k - 1
    bessel = {r: bessel_series(r, order) for r in range(0, 2 * size + 1)}
    matrix = [
        [bessel[abs(i - j)] - bessel[i + j] for j in range(1, size + 1)]
        for i in range(1, size + 1)
    ]
    egf = series_determinant(matrix)
    values = []
    for n in range(n_max + 1):
        v = egf[2 * n] * factorial(2 * n)
        if v.denominator != 1:
            raise ArithmeticError(f"non-integer f_{k}({2 * n}) = {v}")
        values.append(v.numerator)
    return MatchingTable(k, tuple(values), "determinant")


BACKENDS = {"walk": count_matchings_walk, "determinant": count_matchings_determinant}


def matching_table(k: int, n_max: int, backend: str = "walk") -> MatchingTable:
    return BACKENDS[backend](k, n_max)


def matching_ogf(k: int, order: int, backend: str = "walk") -> Series:
    """F_k(z) = sum f_k(2n) z^(2n), truncated at z^order."""
    table = matching_table(k, order // 2, backend)
    return Series([table[n // 2] if n % 2 == 0 else 0 for n in range(order + 1)], order)


@lru_cache(maxsize=None)
def count_partial_matchings(k: int, n_max: int, backend: str = "walk") -> tuple[int, ...]:
    """M_k(n) for n = 0..n_max: isolated points never take part in a crossing."""
    _check_k(k, n_max)
    f = matching_table(k, n_max // 2, backend)
    return tuple(
        sum(binom(n, 2 * m) * f[m] for m in range(n // 2 + 1)) for n in range(n_max + 1)
    )


def partial_matching_ogf_composed(k: int, order: int, backend: str = "walk") -> Series:
    """(1/(1-z)) * F_k(z/(1-z)), the series route to sum M_k(n) z^n."""
    inner = z_series(order) * geometric(order)
    return geometric(order) * matching_ogf(k, order, backend).compose(inner)
