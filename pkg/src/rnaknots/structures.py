"""Counts of k-noncrossing RNA structures with minimum arc length 2, 3 and 4.

Each family is reachable by several independent routes; ``method`` on the
returned :class:`CountTable` records which one produced it.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import diagrams
from .matchings import (
    binom, count_partial_matchings, matching_ogf, partial_matching_ogf_composed,
)
from .series import Series, build_algebraic_pack
from .shortarcs import LambdaTable, lambda_positional_dp


class UnsupportedParameterError(ValueError):
    """A formula was asked for parameters outside the range where it holds."""


@dataclass(frozen=True)
class CountTable:
    k: int
    lambda_min: int
    values: tuple[int, ...]
    method: str

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> int:
        return self.values[n]


def _require(cond: bool, msg: str):
    if not cond:
        raise UnsupportedParameterError(msg + "; use the diagram oracle (method='oracle') instead")


# -- secondary structures -----------------------------------------------------

@lru_cache(maxsize=None)
def t2_waterman_lambda(lam: int, n_max: int) -> CountTable:
    """Noncrossing structures with arcs of length >= lam.

    T(n) = T(n-1) + sum_{s=0}^{n-lam-1} T(n-2-s) T(s): vertex n is either
    isolated or paired with s+1, splitting off s outside and n-2-s inside.
    """
    if lam < 1:
        raise ValueError("lam must be >= 1")
    T = [1]
    for n in range(1, n_max + 1):
        T.append(T[n - 1] + sum(T[n - 2 - s] * T[s] for s in range(0, n - lam)))
    return CountTable(2, lam, tuple(T), "waterman-recursion")


def t2_waterman(n_max: int) -> CountTable:
    return t2_waterman_lambda(2, n_max)


# -- inclusion-exclusion ------------------------------------------------------

def _inclusion_exclusion(k: int, lam: int, n_max: int, placements) -> CountTable:
    M = count_partial_matchings(k, n_max)
    values = []
    for n in range(n_max + 1):
        values.append(sum((-1) ** b * placements(n, b) * M[n - 2 * b] for b in range(n // 2 + 1)))
    return CountTable(k, lam, tuple(values), "inclusion-exclusion")


@lru_cache(maxsize=None)
def t_lambda2(k: int, n_max: int) -> CountTable:
    """Removing 1-arcs: they cross nothing, so any k >= 2 works."""
    if k < 2:
        raise ValueError("k must be >= 2")
    return _inclusion_exclusion(k, 2, n_max, lambda n, b: binom(n - b, b))


@lru_cache(maxsize=None)
def t_lambda3(k: int, n_max: int, method: str = "ie") -> CountTable:
    """Arc length >= 3 via inclusion-exclusion over arcs of length <= 2, or via series.

    A 2-arc is crossed by at most one other arc, hence the k > 2 requirement.
    """
    _require(k > 2, f"the arc-length-3 formulas need k > 2, got k={k}")
    if method == "ie":
        table = lambda_positional_dp(n_max, max_length=2)
        return _inclusion_exclusion(k, 3, n_max, table)
    if method == "series":
        N = n_max
        denom = Series.polynomial((1, -1, 1, 1, -1), N)
        inner = Series.polynomial((0, 1, 0, -1), N) / denom
        gf = matching_ogf(k, N).compose(inner) / denom
        return CountTable(k, 3, tuple(gf.integers()), "functional-equation")
    raise ValueError(f"unknown method {method!r}")


@lru_cache(maxsize=None)
def t4_inclusion_exclusion(k: int, n_max: int, table: LambdaTable | None = None) -> CountTable:
    """Arc length >= 4.  Arcs of length <= 3 meet at most 3 mutually crossing arcs, so k > 3."""
    _require(k > 3, f"the arc-length-4 formulas need k > 3, got k={k}")
    if table is None or table.max_n < n_max:
        table = lambda_positional_dp(n_max)
    return _inclusion_exclusion(k, 4, n_max, table)


@lru_cache(maxsize=None)
def t4_functional_equation(k: int, n_max: int, order: int | None = None,
                           printed_weights: bool = False) -> CountTable:
    """Sum of the two compositions F_k(theta_j(z)) weighted by F_j(-z^2)/(1 - z f_j(-z^2)).

    ``printed_weights`` swaps in the F_j fixed by phi_0 = phi_1 = 1; those do
    not reproduce the counts and exist only for comparison.
    """
    _require(k > 3, f"the arc-length-4 formulas need k > 3, got k={k}")
    order = n_max if order is None else order
    if order < n_max:
        raise ValueError("series order must be at least n_max")
    pack = build_algebraic_pack(order)
    Fk = matching_ogf(k, order)
    if printed_weights:
        p1, p2 = pack.prefactor1_printed, pack.prefactor2_printed
    else:
        p1, p2 = pack.prefactor1, pack.prefactor2
    gf = p1 * Fk.compose(pack.theta1) + p2 * Fk.compose(pack.theta2)
    # a non-integer coefficient would mean a wrong branch, so integers() raises
    return CountTable(k, 4, tuple(gf.truncate(n_max).integers()), "functional-equation")


def partial_matching_gf(k: int, order: int) -> Series:
    """sum M_k(n) z^n from the closed count, for series comparisons."""
    return Series(count_partial_matchings(k, order), order)


# -- oracle -------------------------------------------------------------------

def oracle_table(k: int, lambda_min: int, n_max: int) -> CountTable:
    values = tuple(diagrams.count(n, k, lambda_min) for n in range(n_max + 1))
    return CountTable(k, lambda_min, values, "oracle")


# -- dispatch -----------------------------------------------------------------

METHODS = ("oracle", "ie", "series", "waterman", "walk", "bessel")


def count_table(k: int, lambda_min: int, n_max: int, method: str = "auto",
                order: int | None = None) -> CountTable:
    """Single entry point used by the CLI; enforces each route's scope."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if lambda_min not in (1, 2, 3, 4):
        raise ValueError("lambda_min must be 1, 2, 3 or 4")
    if method == "auto":
        method = auto_method(k, lambda_min)
    if method == "oracle":
        return oracle_table(k, lambda_min, n_max)
    if lambda_min == 1:
        if method in ("walk", "bessel", "ie"):
            backend = "determinant" if method == "bessel" else "walk"
            return CountTable(k, 1, count_partial_matchings(k, n_max, backend), method)
        if method == "series":
            gf = partial_matching_ogf_composed(k, max(order or n_max, n_max))
            return CountTable(k, 1, tuple(gf.truncate(n_max).integers()), "functional-equation")
        if method == "waterman" and k == 2:
            return t2_waterman_lambda(1, n_max)
    elif method == "waterman":
        _require(k == 2, f"the Waterman recursion counts secondary structures only (k=2), got k={k}")
        return t2_waterman_lambda(lambda_min, n_max)
    elif lambda_min == 2:
        if method == "ie":
            return t_lambda2(k, n_max)
        if method == "series":
            return _lambda2_series(k, n_max)
    elif lambda_min == 3:
        if method in ("ie", "series"):
            return t_lambda3(k, n_max, method)
    elif lambda_min == 4:
        if method == "ie":
            return t4_inclusion_exclusion(k, n_max)
        if method == "series":
            return t4_functional_equation(k, n_max, order)
    raise UnsupportedParameterError(
        f"method {method!r} is not available for lambda_min={lambda_min}; "
        f"use the diagram oracle (method='oracle') instead"
    )


def _lambda2_series(k: int, n_max: int) -> CountTable:
    # sum_n T^[2](n) z^n = 1/(1-z+z^2) F_k(z/(1-z+z^2))
    denom = Series.polynomial((1, -1, 1), n_max)
    inner = Series.polynomial((0, 1), n_max) / denom
    gf = matching_ogf(k, n_max).compose(inner) / denom
    return CountTable(k, 2, tuple(gf.integers()), "functional-equation")


def auto_method(k: int, lambda_min: int) -> str:
    if lambda_min == 1:
        return "walk"
    if k == 2:
        return "waterman"
    if lambda_min == 3 and k <= 2:
        return "oracle"
    if lambda_min == 4 and k <= 3:
        return "oracle"
    return "ie"
