from fractions import Fraction

import mpmath
import pytest

from rnaknots.asymptotics import (
    PrecisionError, SolverError, asymptotic_estimate, ratio_diagnostic, rho, solve_gamma,
    subexp_exponent, theta,
)
from rnaknots.series import build_algebraic_pack
from rnaknots.structures import UnsupportedParameterError, t4_functional_equation

GROWTH_RATES = {4: "6.52900", 5: "8.64830", 6: "10.71759", 7: "12.76349", 8: "14.79631"}


def _polymul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _in_z2(coeffs):
    # polynomial in x = -z^2, rewritten in z
    out = [Fraction(0)] * (2 * len(coeffs) - 1)
    for i, c in enumerate(coeffs):
        out[2 * i] = c * (-1) ** i
    return out


def oracle_gamma4(k, dps=50):
    """Smallest positive root of a(x) c^2 - B(x) c z + z^4, x = -z^2, c = rho/(1+rho).

    With w = f_1(x) this is theta_1 = rho rewritten through a w^2 - B w - x = 0.
    """
    r = Fraction(1, 2 * (k - 1))
    c = r / (1 + r)
    a = _in_z2([1, -2, -1, 0, 1])
    B = _in_z2([1, 0, 2, -1])
    poly = [Fraction(0)] * 9
    for i, v in enumerate(a):
        poly[i] += v * c * c
    for i, v in enumerate(_polymul(B, [0, -c])):
        poly[i] += v
    poly[4] += 1
    with mpmath.workdps(dps):
        roots = mpmath.polyroots([mpmath.mpf(v.numerator) / v.denominator for v in reversed(poly)],
                                 maxsteps=200, extraprec=200)
        real = sorted(mpmath.re(z) for z in roots if abs(mpmath.im(z)) < mpmath.mpf(10) ** (-30)
                      and mpmath.re(z) > 0)
        return real[0]


def oracle_gamma2(k):
    # z / (z^2 - z + 1) = rho  <=>  rho z^2 - (rho + 1) z + rho = 0
    r = mpmath.mpf(1) / (2 * (k - 1))
    return ((r + 1) - mpmath.sqrt((r + 1) ** 2 - 4 * r * r)) / (2 * r)


@pytest.mark.parametrize("k,want", sorted(GROWTH_RATES.items()))
def test_growth_rates_k4_to_k8(k, want):
    r = solve_gamma(k, 4)
    assert abs(r.growth_rate - mpmath.mpf(want)) <= mpmath.mpf("1.000001e-5")
    assert r.residual < 1e-12
    assert 0 < r.gamma < 1 < r.growth_rate
    assert not r.extrapolated


@pytest.mark.parametrize("k", range(4, 10))
def test_gamma_matches_polynomial_oracle(k):
    with mpmath.workdps(50):
        assert abs(solve_gamma(k, 4, digits=50).gamma - oracle_gamma4(k)) < mpmath.mpf(10) ** -40


@pytest.mark.parametrize("k", range(2, 7))
def test_lambda2_gamma_closed_form(k):
    with mpmath.workdps(40):
        assert abs(solve_gamma(k, 2, digits=40).gamma - oracle_gamma2(k)) < mpmath.mpf(10) ** -30


def test_growth_rates_lambda2_lambda3():
    assert mpmath.nstr(solve_gamma(2, 2).growth_rate, 7) == "2.618034"
    assert mpmath.nstr(solve_gamma(3, 3).growth_rate, 8) == "4.5492014"
    with pytest.raises(UnsupportedParameterError):
        solve_gamma(2, 3)
    with pytest.raises(UnsupportedParameterError):
        solve_gamma(3, 4)


def test_gamma_decreases_with_k():
    gammas = [solve_gamma(k, 4, digits=30).gamma for k in range(4, 10)]
    assert gammas == sorted(gammas, reverse=True)


def test_extrapolation_flag():
    r = solve_gamma(10, 4)
    assert r.extrapolated
    assert mpmath.nstr(r.growth_rate, 10) == "18.84031499"


def test_exponents_and_rho():
    assert subexp_exponent(4) == Fraction(21, 2)
    assert subexp_exponent(5) == 18
    assert subexp_exponent(2) == Fraction(3, 2)
    assert rho(4) == Fraction(1, 6)


def test_theta_series_matches_numeric():
    pack = build_algebraic_pack(60)
    g4 = solve_gamma(4, 4, digits=30).gamma
    with mpmath.workdps(30):
        for i in range(0, 11):
            z = g4 * i / 10
            s = sum(mpmath.mpf(c.numerator) / c.denominator * z**j
                    for j, c in enumerate(pack.theta1.coeffs))
            assert abs(s - theta(z, 1)) < mpmath.mpf(10) ** -25


def test_theta1_exceeds_theta2_and_increases():
    g = solve_gamma(4, 4, digits=30).gamma
    prev = None
    for i in range(1, 101):
        z = g * i / 100
        t1 = theta(z, 1)
        assert t1 > theta(z, 2)
        if prev is not None:
            assert t1 > prev
        prev = t1


def test_solver_rejects_bad_tol():
    with pytest.raises(ValueError):
        solve_gamma(4, 4, tol=0)
    with pytest.raises(SolverError):
        solve_gamma(4, 4, tol=1e-300)


@pytest.fixture(scope="module")
def diagnostic():
    return ratio_diagnostic(4, range(50, 151))


def test_ratio_diagnostic_properties(diagnostic):
    assert all(r > 0 for r in diagnostic.ratios)
    assert max(diagnostic.rel_widths) < 1e-40
    changes = [diagnostic.rel_changes[n] for n in range(60, 151, 10)]
    assert all(b < a for a, b in zip(changes, changes[1:]))
    assert changes[-1] < 0.05
    assert mpmath.mpf("4.4509e7") / 2 <= diagnostic.ratios[-1] <= 2 * mpmath.mpf("4.4509e7")


def test_ratio_independent_recomputation(diagnostic):
    # counts from the series route, gamma from the polynomial oracle, plain floats at 80 digits
    counts = t4_functional_equation(4, 150).values
    with mpmath.workdps(80):
        g = oracle_gamma4(4, dps=80)
        for n in (50, 100, 150):
            r = counts[n] * mpmath.power(n, mpmath.mpf(21) / 2) * g**n
            got = diagnostic.ratios[diagnostic.ns.index(n)]
            assert abs(r - got) / r < mpmath.mpf(10) ** -40


def test_ratio_stable_across_precision(diagnostic):
    hi = ratio_diagnostic(4, range(140, 151), precision_digits=90)
    for n, r in zip(hi.ns, hi.ratios):
        lo = diagnostic.ratios[diagnostic.ns.index(n)]
        assert abs(r - lo) / r <= diagnostic.rel_widths[diagnostic.ns.index(n)] + hi.rel_widths[0]


def test_ratio_precision_error():
    with pytest.raises(PrecisionError):
        ratio_diagnostic(4, range(140, 151), precision_digits=15)


def test_estimate_limits(diagnostic):
    c = diagnostic.ratios[-1]
    g = diagnostic.gamma
    counts = t4_functional_equation(4, 150).values
    with mpmath.workdps(40):
        est = asymptotic_estimate(4, 150, c, gamma=g, digits=40)
        assert abs(est / counts[150] - 1) < mpmath.mpf(10) ** -30
        step = [asymptotic_estimate(4, n + 1, 1, gamma=g, digits=40) /
                asymptotic_estimate(4, n, 1, gamma=g, digits=40) for n in (100, 10000, 1000000)]
        errs = [abs(s - 1 / g) for s in step]
        assert errs == sorted(errs, reverse=True) and errs[-1] < 1e-4
