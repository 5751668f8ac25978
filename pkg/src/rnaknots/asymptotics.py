"""Dominant singularities, growth rates and the ratio diagnostic.

For arc length >= lambda the counting series is F_k composed with an
algebraic inner map g_lambda (times a regular prefactor), and the dominant
singularity gamma solves g_lambda(gamma) = rho_k = 1/(2(k-1)).

    lambda = 2:  g(z) = z / (z^2 - z + 1)
    lambda = 3:  g(z) = (z - z^3) / (1 - z + z^2 + z^3 - z^4)
    lambda = 4:  g(z) = theta_1(z) = z f1(-z^2) / (1 - z f1(-z^2))

Bisection runs on exact rationals (the sign of g(z) - rho is decided without
rounding, including for the square root in theta_1) and the final digits
come from Newton steps in mpmath.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from .series import DENOM_A, NUMER_B, RADICAND
from .structures import UnsupportedParameterError, t4_inclusion_exclusion

DEFAULT_DIGITS = 60
CERTIFIED_K_MAX = 9  # dominant-singularity uniqueness is only established up to here


class SolverError(ArithmeticError):
    pass


class DomainError(SolverError):
    pass


class PrecisionError(ArithmeticError):
    pass


def rho(k: int) -> Fraction:
    if k < 2:
        raise ValueError("k must be >= 2")
    return Fraction(1, 2 * (k - 1))


def subexp_exponent(k: int) -> Fraction:
    """(k-1)^2 + (k-1)/2, shared by every arc-length family."""
    if k < 2:
        raise ValueError("k must be >= 2")
    return Fraction((k - 1) ** 2) + Fraction(k - 1, 2)


def _poly(coeffs: Sequence[int], x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


# -- exact sign tests ---------------------------------------------------------

def _theta_parts(z: Fraction):
    x = -z * z
    return _poly(RADICAND, x), _poly(DENOM_A, x), _poly(NUMER_B, x)


def _sqrt_exceeds(radicand: Fraction, w: Fraction) -> bool:
    """sqrt(radicand) > w, decided exactly."""
    if w < 0:
        return True
    return radicand > w * w


def _theta1_exceeds(z: Fraction, target: Fraction) -> bool:
    """theta_1(z) > target for 0 < z, with domain checks."""
    R, a, P = _theta_parts(z)
    if R <= 0:
        raise DomainError(f"radicand of u(-z^2) is {float(R):.3g} <= 0 at z={float(z)}")
    if a <= 0:
        raise DomainError(f"1-2x-x^2+x^4 vanishes before z={float(z)}")
    # y = z f1 = z (P + u) / (2a); theta = y / (1 - y) needs y < 1
    if _sqrt_exceeds(R, 2 * a / z - P) or R == (2 * a / z - P) ** 2:
        raise DomainError(f"z f1(-z^2) reaches 1 at z={float(z)}")
    c = target / (1 + target)
    return _sqrt_exceeds(R, 2 * a * c / z - P)


def _rational_map(lambda_min: int, z: Fraction) -> Fraction:
    if lambda_min == 2:
        return z / (z * z - z + 1)
    return (z - z**3) / _poly((1, -1, 1, 1, -1), z)


def _exceeds(lambda_min: int, z: Fraction, target: Fraction) -> bool:
    if lambda_min == 4:
        return _theta1_exceeds(z, target)
    return _rational_map(lambda_min, z) > target


# -- numeric maps -------------------------------------------------------------

def theta(z, branch: int = 1):
    """theta_branch(z) in mpmath arithmetic at the current precision."""
    z = mpmath.mpf(z) if not isinstance(z, mpmath.mpc) else z
    x = -z * z
    u = mpmath.sqrt(_poly(RADICAND, x))
    a = _poly(DENOM_A, x)
    P = _poly(NUMER_B, x)
    f = (P + u) / (2 * a) if branch == 1 else (P - u) / (2 * a)
    return z * f / (1 - z * f)


def singular_map(lambda_min: int):
    if lambda_min == 4:
        return lambda z: theta(z, 1)
    if lambda_min == 2:
        return lambda z: z / (z * z - z + 1)
    if lambda_min == 3:
        return lambda z: (z - z**3) / (1 - z + z**2 + z**3 - z**4)
    raise ValueError(f"no singular map for lambda_min={lambda_min}")


def _to_fraction(x) -> Fraction:
    # mpf(x) would re-round to the ambient precision
    man, exp = (x if isinstance(x, mpmath.mpf) else mpmath.mpf(x)).man_exp
    return Fraction(man) * Fraction(2) ** exp


# -- solver -------------------------------------------------------------------

@dataclass
class SingularityReport:
    k: int
    lambda_min: int
    rho_k: Fraction
    gamma: mpmath.mpf
    growth_rate: mpmath.mpf
    residual: mpmath.mpf
    subexp_exponent: Fraction
    bracket: tuple[Fraction, Fraction]
    digits: int
    extrapolated: bool = False
    theta2_crossings: list = field(default_factory=list)

    def as_row(self) -> dict:
        return {
            "k": self.k,
            "gamma_inverse": mpmath.nstr(self.growth_rate, 15),
            "rho": str(self.rho_k),
            "exponent": str(self.subexp_exponent),
            "residual": mpmath.nstr(self.residual, 3),
        }


GRID = 256
Z_LIMIT = {2: Fraction(1), 3: Fraction(1, 2), 4: Fraction(15, 32)}


def _check_scope(k: int, lambda_min: int):
    if lambda_min not in (2, 3, 4):
        raise ValueError("lambda_min must be 2, 3 or 4")
    if k < 2:
        raise ValueError("k must be >= 2")
    if lambda_min == 3 and k < 3:
        raise UnsupportedParameterError("the arc-length-3 singular equation needs k > 2")
    if lambda_min == 4 and k < 4:
        raise UnsupportedParameterError("the arc-length-4 singular equation needs k > 3")


def _bracket(k: int, lambda_min: int, target: Fraction) -> tuple[Fraction, Fraction]:
    """First grid cell (j-1)/GRID .. j/GRID in which the map crosses target."""
    limit = Z_LIMIT[lambda_min]
    j = 1
    while True:
        z = Fraction(j, GRID)
        if z >= limit:
            raise SolverError(f"no crossing of rho_{k}={target} below z={float(limit)}")
        if _exceeds(lambda_min, z, target):
            return Fraction(j - 1, GRID), z
        j += 1


def _check_monotone(fn, hi: Fraction, points: int = 400):
    prev = None
    for i in range(1, points + 1):
        v = fn(mpmath.mpf(i) / points * mpmath.mpf(hi.numerator) / hi.denominator)
        if prev is not None and v <= prev:
            raise SolverError(f"singular map is not increasing near z={float(hi) * i / points:.4g}")
        prev = v


def _theta2_crossings(target: Fraction, hi: Fraction, points: int = 400) -> list[tuple[str, float]]:
    found = []
    h = mpmath.mpf(hi.numerator) / hi.denominator
    for sign in (1, -1):
        prev = None
        for i in range(-points, points + 1):
            z = h * i / points
            v = theta(z, 2) - sign * mpmath.mpf(target.numerator) / target.denominator
            if prev is not None and mpmath.sign(v) != mpmath.sign(prev[1]):
                found.append(("+rho" if sign > 0 else "-rho", float((prev[0] + z) / 2)))
            prev = (z, v)
    return found


def solve_gamma(k: int, lambda_min: int = 4, tol: float = 1e-12,
                digits: int = DEFAULT_DIGITS, switch_width: Fraction = Fraction(1, 10**6)
                ) -> SingularityReport:
    _check_scope(k, lambda_min)
    if tol <= 0:
        raise ValueError("tol must be positive")
    target = rho(k)
    lo, hi = _bracket(k, lambda_min, target)
    while hi - lo > switch_width:
        mid = (lo + hi) / 2
        if _exceeds(lambda_min, mid, target):
            hi = mid
        else:
            lo = mid
    with mpmath.workdps(digits + 10):
        fn = singular_map(lambda_min)
        _check_monotone(fn, hi)
        r = mpmath.mpf(target.numerator) / target.denominator
        z0 = (mpmath.mpf(lo.numerator) / lo.denominator + mpmath.mpf(hi.numerator) / hi.denominator) / 2
        gamma = mpmath.findroot(lambda z: fn(z) - r, z0, solver="newton")
        if not lo <= _to_fraction(gamma) <= hi:
            raise SolverError(f"Newton refinement left the bracket [{float(lo)}, {float(hi)}]")
        residual = abs(fn(gamma) - r)
        crossings = []
        if lambda_min == 4:
            for i in range(1, 200):
                z = gamma * i / 200
                if not theta(z, 1) > theta(z, 2):
                    raise SolverError(f"theta_1 <= theta_2 at z={mpmath.nstr(z, 6)}")
            crossings = _theta2_crossings(target, hi)
    with mpmath.workdps(digits):
        gamma = +gamma
        report = SingularityReport(
            k=k, lambda_min=lambda_min, rho_k=target, gamma=gamma, growth_rate=1 / gamma,
            residual=+residual, subexp_exponent=subexp_exponent(k), bracket=(lo, hi),
            digits=digits, extrapolated=lambda_min == 4 and k > CERTIFIED_K_MAX,
            theta2_crossings=crossings,
        )
    if report.residual >= tol:
        raise SolverError(f"residual {mpmath.nstr(report.residual, 3)} exceeds tol={tol}")
    return report


def gamma_enclosure(k: int, lambda_min: int, digits: int) -> tuple[Fraction, Fraction, SingularityReport]:
    """Rational interval certified (by exact sign tests) to contain gamma."""
    report = solve_gamma(k, lambda_min, digits=digits)
    target = rho(k)
    delta = Fraction(1, 10 ** max(digits - 5, 1))
    g = _to_fraction(report.gamma)
    lo, hi = g - delta, g + delta
    if _exceeds(lambda_min, lo, target) or not _exceeds(lambda_min, hi, target):
        raise PrecisionError(f"could not certify gamma to {digits - 5} digits")
    return lo, hi, report


# -- ratio diagnostic ---------------------------------------------------------

@dataclass
class RatioDiagnostic:
    k: int
    exponent: Fraction
    gamma: mpmath.mpf
    ns: list[int]
    ratios: list  # interval midpoints, mpf
    rel_widths: list
    rel_changes: dict[int, mpmath.mpf]  # n -> |r(n) - r(n - step)| / r(n)
    step: int
    digits: int

    def rows(self) -> list[tuple[int, str]]:
        return [(n, mpmath.nstr(r, 15)) for n, r in zip(self.ns, self.ratios)]


def ratio_diagnostic(k: int = 4, n_range: Sequence[int] = range(50, 151),
                     precision_digits: int = DEFAULT_DIGITS, step: int = 10,
                     max_rel_width: float = 1e-12, counts: Sequence[int] | None = None
                     ) -> RatioDiagnostic:
    """r(n) = T_k^[4](n) * n^e * gamma^n in interval arithmetic.

    The interval around gamma is certified by exact sign tests, so the width
    of each r(n) bounds its error; a width above ``max_rel_width`` raises
    :class:`PrecisionError`.
    """
    ns = list(n_range)
    if not ns or min(ns) < 1:
        raise ValueError("n_range must be nonempty and start at n >= 1")
    if counts is None:
        counts = t4_inclusion_exclusion(k, max(ns)).values
    lo, hi, report = gamma_enclosure(k, 4, precision_digits)
    e = subexp_exponent(k)
    iv = mpmath.iv
    ratios, widths = [], []
    with mpmath.workdps(precision_digits):
        old = iv.dps
        iv.dps = precision_digits
        try:
            g_lo = iv.mpf(lo.numerator) / lo.denominator
            g_hi = iv.mpf(hi.numerator) / hi.denominator
            g = iv.mpf([g_lo.a, g_hi.b])
            for n in ns:
                r = _ratio_interval(counts[n], n, e, g)
                r_lo, r_hi = mpmath.mpf(r.a), mpmath.mpf(r.b)
                mid = (r_lo + r_hi) / 2
                width = (r_hi - r_lo) / r_lo
                if width > max_rel_width:
                    raise PrecisionError(
                        f"r({n}) has relative width {mpmath.nstr(width, 3)} > {max_rel_width}; "
                        f"raise precision_digits (now {precision_digits})")
                ratios.append(mid)
                widths.append(width)
        finally:
            iv.dps = old
        changes = {}
        index = {n: i for i, n in enumerate(ns)}
        for n in ns:
            if n - step in index:
                rn, rp = ratios[index[n]], ratios[index[n - step]]
                changes[n] = abs(rn - rp) / rn
    return RatioDiagnostic(k, e, report.gamma, ns, ratios, widths, changes, step, precision_digits)


def _ratio_interval(count: int, n: int, e: Fraction, g):
    iv = mpmath.iv
    # n^e with e = p/q, q in {1, 2}
    p, q = e.numerator, e.denominator
    power = iv.mpf(n) ** p
    if q == 2:
        power = iv.sqrt(power)
    elif q != 1:
        raise ValueError("exponent denominator must be 1 or 2")
    return iv.mpf(count) * power * g**n


def asymptotic_estimate(k: int, n: int, c_k, gamma=None, digits: int = 30):
    """c_k * n^(-e) * gamma^(-n); an approximation, not a count."""
    if gamma is None:
        gamma = solve_gamma(k, 4, digits=digits).gamma
    e = subexp_exponent(k)
    with mpmath.workdps(digits):
        return mpmath.mpf(c_k) * mpmath.power(n, -mpmath.mpf(e.numerator) / e.denominator) * mpmath.power(gamma, -n)
