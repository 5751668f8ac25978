"""Cross-method and oracle equivalence suites run by ``rnaknots verify``."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import mpmath

from . import diagrams
from .asymptotics import solve_gamma
from .matchings import (
    count_matchings_determinant, count_matchings_walk, double_factorial_odd,
    partial_matching_ogf_composed,
)
from .series import Series, build_algebraic_pack, z_series
from .shortarcs import check_phi_recurrence, lambda_positional_dp, recursion_report
from .structures import (
    METHODS, UnsupportedParameterError, count_table, oracle_table,
    partial_matching_gf, t4_functional_equation, t4_inclusion_exclusion,
)

T4_K4_VALUES = (1, 1, 1, 1, 2, 5, 15, 51, 179, 647, 2397, 9081, 35181, 139307, 563218)
GROWTH_RATES = {4: "6.52900", 5: "8.64830", 6: "10.71759", 7: "12.76349", 8: "14.79631"}


@dataclass
class SuiteResult:
    name: str
    passed: bool
    detail: str
    first_divergence: Optional[str] = None


def _first_diff(a, b) -> Optional[int]:
    for i, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return i
    if len(a) != len(b):
        return min(len(a), len(b))
    return None


def suite_oracle(n_max: int) -> SuiteResult:
    checked = 0
    for k in (2, 3, 4, 5):
        for lam in (1, 2, 3, 4):
            oracle = oracle_table(k, lam, n_max).values
            for method in METHODS:
                if method == "oracle":
                    continue
                try:
                    got = count_table(k, lam, n_max, method).values
                except UnsupportedParameterError:
                    continue
                i = _first_diff(got, oracle)
                checked += 1
                if i is not None:
                    return SuiteResult("oracle-equivalence", False, f"{checked} tables checked",
                                       f"k={k} lambda={lam} method={method} n={i}: "
                                       f"{got[i]} != oracle {oracle[i]}")
    return SuiteResult("oracle-equivalence", True, f"{checked} tables equal the oracle to n={n_max}")


def suite_t4_values() -> SuiteResult:
    for name, fn in (("ie", t4_inclusion_exclusion), ("series", t4_functional_equation)):
        got = fn(4, 15).values[1:]
        i = _first_diff(got, T4_K4_VALUES)
        if i is not None:
            return SuiteResult("t4-values", False, "",
                               f"method={name} n={i + 1}: {got[i]} != {T4_K4_VALUES[i]}")
    return SuiteResult("t4-values", True, "T_4^[4](1..15) by inclusion-exclusion and series")


def suite_matchings(n_max: int = 30, k_max: int = 9) -> SuiteResult:
    for k in range(2, k_max + 1):
        w = count_matchings_walk(k, n_max).values
        d = count_matchings_determinant(k, n_max).values
        i = _first_diff(w, d)
        if i is not None:
            return SuiteResult("matchings-backends", False, "",
                               f"k={k} n={i}: walk {w[i]} != determinant {d[i]}")
        for n in range(min(k, n_max + 1)):
            if w[n] != double_factorial_odd(n):
                return SuiteResult("matchings-backends", False, "",
                                   f"k={k} n={n}: f_k(2n)={w[n]} != (2n-1)!!")
    return SuiteResult("matchings-backends", True, f"walk = determinant for k<={k_max}, n<={n_max}")


def suite_partial_series(order: int = 30) -> SuiteResult:
    for k in range(2, 7):
        lhs = partial_matching_gf(k, order)
        rhs = partial_matching_ogf_composed(k, order)
        i = _first_diff(lhs.coeffs, rhs.coeffs)
        if i is not None:
            return SuiteResult("partial-matching-series", False, "",
                               f"k={k} z^{i}: {lhs[i]} != {rhs[i]}")
    return SuiteResult("partial-matching-series", True, f"sum M_k z^n = F_k(z/(1-z))/(1-z) to z^{order}, k=2..6")


def suite_algebraic(order: int = 50) -> SuiteResult:
    pack = build_algebraic_pack(order)
    x = z_series(order)
    checks = {
        "u^2": (pack.u * pack.u, Series.polynomial((1, 4, -4, -6, 4, 0, 1), order)),
        "f1+f2": (pack.f1 + pack.f2, pack.B / pack.a),
        "f1*f2": (pack.f1 * pack.f2, -x / pack.a),
    }
    for j, f in (("1", pack.f1), ("2", pack.f2)):
        checks[f"a f{j}^2 - B f{j} - x"] = (pack.a * f * f - pack.B * f - x, Series.constant(0, order))
    for name, (lhs, rhs) in checks.items():
        i = _first_diff(lhs.coeffs, rhs.coeffs)
        if i is not None:
            return SuiteResult("algebraic-pack", False, "", f"{name} differs at z^{i}")
    return SuiteResult("algebraic-pack", True, f"{len(checks)} identities hold to z^{order}")


def suite_lambda(n_max: int) -> SuiteResult:
    n_oracle = min(n_max, 14)
    dp = lambda_positional_dp(max(n_max, 30))
    for n in range(n_oracle + 1):
        for b in range(n // 2 + 1):
            o = diagrams.count_placements_max_length(n, b, 3)
            if dp(n, b) != o:
                return SuiteResult("lambda-table", False, "",
                                   f"lambda({n},{b}): dp {dp(n, b)} != oracle {o}")
    for n in range(3, dp.max_n + 1):
        if dp(n, 1) != 3 * n - 6:
            return SuiteResult("lambda-table", False, "", f"lambda({n},1)={dp(n, 1)} != 3n-6")
    report = recursion_report(dp.max_n)
    if not report.confined_to_seeds:
        first = (report.step_deviations or report.oracle_seeded_deviations)[0]
        return SuiteResult("lambda-table", False, report.describe(), f"recursion cell {first}")
    return SuiteResult("lambda-table", True, f"dp = oracle to n={n_oracle}; {report.describe()}")


def suite_phi(n_max: int = 8, order: int = 12) -> SuiteResult:
    notes = []
    for n in range(1, n_max + 1):
        r = check_phi_recurrence(n, order)
        if not (r.recurrence_holds and r.closed_form_holds):
            return SuiteResult("phi-closed-form", False, "", r.describe())
        if r.printed_closed_form_mismatch is not None:
            notes.append(n)
    return SuiteResult("phi-closed-form", True,
                       f"recurrence and closed form hold for phi_1..phi_{n_max}; "
                       f"weights fixed by phi_0=phi_1=1 fail for n in {notes}")


def suite_growth_rates() -> SuiteResult:
    for k, want in GROWTH_RATES.items():
        r = solve_gamma(k, 4)
        got = mpmath.mpf(r.growth_rate)
        if abs(got - mpmath.mpf(want)) > mpmath.mpf("1.000001e-5"):
            return SuiteResult("growth-rates", False, "",
                               f"k={k}: {mpmath.nstr(got, 10)} vs {want}")
    return SuiteResult("growth-rates", True, "growth rates k=4..8 within 1e-5")


SUITES: dict[str, Callable[[int], SuiteResult]] = {
    "oracle-equivalence": suite_oracle,
    "t4-values": lambda n: suite_t4_values(),
    "matchings-backends": lambda n: suite_matchings(),
    "partial-matching-series": lambda n: suite_partial_series(),
    "algebraic-pack": lambda n: suite_algebraic(),
    "lambda-table": suite_lambda,
    "phi-closed-form": lambda n: suite_phi(),
    "growth-rates": lambda n: suite_growth_rates(),
}


def run_all(n_max: int = 12) -> list[SuiteResult]:
    return [fn(n_max) for fn in SUITES.values()]
