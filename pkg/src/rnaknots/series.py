"""Truncated formal power series with exact rational coefficients.

A :class:`Series` stores coefficients of ``z^0 .. z^order``.  Every binary
operation truncates to the smaller of the two operand orders, so a result
never claims more precision than its inputs carry.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

DEFAULT_ORDER = 64


class SeriesDomainError(ArithmeticError):
    """Raised when an operation is undefined for the given series."""


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


@dataclass(frozen=True)
class Series:
    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [_frac(c) for c in coeffs]
        if order is None:
            order = max(len(cs) - 1, 0)
        if order < 0:
            raise ValueError("order must be nonnegative")
        cs = cs[: order + 1] + [Fraction(0)] * (order + 1 - len(cs))
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, c, order: int = DEFAULT_ORDER) -> Series:
        return cls([c], order)

    @classmethod
    def monomial(cls, power: int, order: int = DEFAULT_ORDER, c=1) -> Series:
        return cls([0] * power + [c], order)

    @classmethod
    def polynomial(cls, coeffs: Sequence, order: int = DEFAULT_ORDER) -> Series:
        return cls(coeffs, order)

    # -- basic access -------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> Series:
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return Series(self.coeffs[: order + 1], order)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def integers(self) -> list[int]:
        """Coefficients as ``int``; raises if any is not an integer."""
        bad = [n for n, c in enumerate(self.coeffs) if c.denominator != 1]
        if bad:
            raise SeriesDomainError(f"non-integer coefficient at z^{bad[0]}: {self.coeffs[bad[0]]}")
        return [c.numerator for c in self.coeffs]

    def __repr__(self) -> str:
        terms = [f"{c}*z^{n}" for n, c in enumerate(self.coeffs[:8]) if c]
        return f"Series({' + '.join(terms) or '0'} + O(z^{self.order + 1}))"

    # -- ring operations ----------------------------------------------------

    def _coerce(self, other) -> Series:
        if isinstance(other, Series):
            return other
        return Series.constant(other, self.order)

    def __add__(self, other) -> Series:
        other = self._coerce(other)
        n = min(self.order, other.order)
        return Series([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n)

    __radd__ = __add__

    def __neg__(self) -> Series:
        return Series([-c for c in self.coeffs], self.order)

    def __sub__(self, other) -> Series:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Series:
        return self._coerce(other) - self

    def __mul__(self, other) -> Series:
        if not isinstance(other, Series):
            c = _frac(other)
            return Series([c * a for a in self.coeffs], self.order)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        nz = [(i, a[i]) for i in range(n + 1) if a[i]]
        out = [Fraction(0)] * (n + 1)
        for j in range(n + 1):
            bj = b[j]
            if not bj:
                continue
            for i, ai in nz:
                if i + j > n:
                    break
                out[i + j] += ai * bj
        return Series(out, n)

    __rmul__ = __mul__

    def reciprocal(self) -> Series:
        a = self.coeffs
        if a[0] == 0:
            raise SeriesDomainError("cannot invert a series with zero constant term")
        n = self.order
        inv0 = 1 / a[0]
        out = [inv0]
        for m in range(1, n + 1):
            s = sum((a[i] * out[m - i] for i in range(1, m + 1) if a[i]), Fraction(0))
            out.append(-s * inv0)
        return Series(out, n)

    def __truediv__(self, other) -> Series:
        if not isinstance(other, Series):
            c = _frac(other)
            if c == 0:
                raise SeriesDomainError("division by zero")
            return Series([a / c for a in self.coeffs], self.order)
        n = min(self.order, other.order)
        return self.truncate(n) * other.truncate(n).reciprocal()

    def __rtruediv__(self, other) -> Series:
        return self._coerce(other) / self

    def __pow__(self, e: int) -> Series:
        if e < 0:
            return self.reciprocal() ** (-e)
        result = Series.constant(1, self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        n = min(self.order, other.order)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # -- analytic operations ------------------------------------------------

    def sqrt1(self) -> Series:
        """Square root with constant term 1 (requires ``self[0] == 1``)."""
        a = self.coeffs
        if a[0] != 1:
            raise SeriesDomainError(f"sqrt1 needs constant term 1, got {a[0]}")
        n = self.order
        t = [Fraction(1)]
        # t_m = (a_m - sum_{i=1}^{m-1} t_i t_{m-i}) / 2
        for m in range(1, n + 1):
            s = sum((t[i] * t[m - i] for i in range(1, m)), Fraction(0))
            t.append((a[m] - s) / 2)
        return Series(t, n)

    def compose(self, inner: Series) -> Series:
        """``self(inner(z))``; ``inner`` must have zero constant term."""
        if inner.coeffs[0] != 0:
            raise SeriesDomainError("inner series of a composition must vanish at 0")
        n = min(self.order, inner.order)
        inner = inner.truncate(n)
        # Horner from the top coefficient down
        acc = Series.constant(self.coeffs[n], n)
        for c in reversed(self.coeffs[:n]):
            acc = acc * inner + c
        return acc

    def substitute_monomial(self, c, power: int) -> Series:
        """``self(c * z^power)``, computed exactly without truncation loss."""
        c = _frac(c)
        n = self.order * power
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs):
            out[i * power] = a * c**i
        return Series(out, n)

    def evaluate(self, z):
        """Evaluate the truncated polynomial at ``z`` (any numeric type)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def even_part(self) -> Series:
        return Series([c if i % 2 == 0 else 0 for i, c in enumerate(self.coeffs)], self.order)


def z_series(order: int = DEFAULT_ORDER) -> Series:
    return Series.monomial(1, order)


def geometric(order: int = DEFAULT_ORDER) -> Series:
    """``1/(1-z)``."""
    return Series([1] * (order + 1), order)


# ---------------------------------------------------------------------------
# The algebraic series attached to arc-length >= 4 structures
# ---------------------------------------------------------------------------

# Polynomials in x, ascending coefficients.
RADICAND = (1, 4, -4, -6, 4, 0, 1)
DENOM_A = (1, -2, -1, 0, 1)
NUMER_B = (1, 0, 2, -1)


@dataclass(frozen=True)
class AlgebraicPack:
    """Series in ``x`` (``u, f1, f2, F1, F2``) and in ``z`` (``theta1, theta2``).

    ``f1``/``f2`` are the two roots of ``a w^2 - B w - x = 0``.  ``F1``/``F2``
    are the weights with ``phi_n = F1 f1^n + F2 f2^n`` where ``phi_n`` counts
    short-arc placements leaving ``n`` vertices free (arc weight ``x``);
    ``F1_printed``/``F2_printed`` are the weights fixed by ``phi_0 = phi_1 = 1``
    instead, kept for comparison.
    """

    order: int
    a: Series
    B: Series
    u: Series
    f1: Series
    f2: Series
    F1: Series
    F2: Series
    F1_printed: Series
    F2_printed: Series
    theta1: Series
    theta2: Series
    prefactor1: Series
    prefactor2: Series
    prefactor1_printed: Series
    prefactor2_printed: Series


def build_algebraic_pack(order: int = DEFAULT_ORDER) -> AlgebraicPack:
    if order < 1:
        raise ValueError("order must be >= 1")
    N = order
    a = Series.polynomial(DENOM_A, N)
    B = Series.polynomial(NUMER_B, N)
    x = z_series(N)
    u = Series.polynomial(RADICAND, N).sqrt1()
    # branch signs fixed so that f1(0) = 1 and f2(0) = 0
    f1 = (B + u) / (a * 2)
    f2 = (B - u) / (a * 2)
    one_minus_x = 1 - x
    # f1 - f2 = u/a, so the generating function (1-x)/(a - B t - x t^2) splits as
    F1 = one_minus_x * f1 / u
    F2 = -(one_minus_x * f2 / u)
    # f1 - f2 has unit constant term, so these are proper series too
    F1p = (1 - f2) * a / u
    F2p = (f1 - 1) * a / u

    # x -> -z^2; order in z is 2N, but theta needs only N terms
    def sub(s: Series) -> Series:
        return s.substitute_monomial(-1, 2).truncate(N)

    zs = z_series(N)
    thetas, prefs, prefs_p = [], [], []
    for f, F, Fp in ((f1, F1, F1p), (f2, F2, F2p)):
        zf = zs * sub(f)
        denom = 1 - zf
        thetas.append(zf / denom)
        prefs.append(sub(F) / denom)
        prefs_p.append(sub(Fp) / denom)
    return AlgebraicPack(
        order=N, a=a, B=B, u=u, f1=f1, f2=f2, F1=F1, F2=F2,
        F1_printed=F1p, F2_printed=F2p,
        theta1=thetas[0], theta2=thetas[1],
        prefactor1=prefs[0], prefactor2=prefs[1],
        prefactor1_printed=prefs_p[0], prefactor2_printed=prefs_p[1],
    )
