"""Placements of vertex-disjoint short arcs (length <= 3).

lambda(n, b) counts ways to put b pairwise vertex-disjoint arcs, each of
length 1, 2 or 3, on n vertices; crossings among them are allowed.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache

from .series import AlgebraicPack, Series, build_algebraic_pack


@dataclass(frozen=True)
class LambdaTable:
    max_n: int
    rows: tuple[tuple[int, ...], ...]  # rows[n][b] for 0 <= 2b <= n
    source: str
    notes: tuple[str, ...] = ()

    def __call__(self, n: int, b: int) -> int:
        if n < 0 or b < 0 or 2 * b > n:
            return 0
        return self.rows[n][b]

    def row(self, n: int) -> tuple[int, ...]:
        return self.rows[n]


def _window_dp(max_n: int, max_length: int, key_of):
    """Scan positions left to right; state = occupancy of the next max_length slots.

    ``key_of(key, length)`` folds a new arc of ``length`` into the arc-count
    key.  Yields, for every n, the map key -> count of placements on [n].
    """
    # state bit t set means position (current + 1 + t) is already a right end
    layer: dict[tuple[int, object], int] = {(0, key_of(None, 0)): 1}
    yield 0, {k: c for (s, k), c in layer.items() if s == 0}
    for n in range(1, max_n + 1):
        nxt: dict[tuple[int, object], int] = defaultdict(int)
        for (state, key), c in layer.items():
            # position n is reached; low bit says whether it is taken
            taken = state & 1
            rest = state >> 1
            if taken:
                nxt[(rest, key)] += c
                continue
            nxt[(rest, key)] += c  # isolated
            for length in range(1, max_length + 1):
                bit = 1 << (length - 1)
                if not rest & bit:
                    nxt[(rest | bit, key_of(key, length))] += c
        layer = nxt
        # only states whose pending right ends fit inside [n] are complete
        yield n, {k: c for (s, k), c in layer.items() if s == 0}


@lru_cache(maxsize=None)
def lambda_positional_dp(max_n: int, max_length: int = 3) -> LambdaTable:
    def key_of(key, length):
        return 0 if key is None else key + 1

    rows = []
    for n, counts in _window_dp(max_n, max_length, key_of):
        row = [0] * (n // 2 + 1)
        for b, c in counts.items():
            row[b] += c
        rows.append(tuple(row))
    return LambdaTable(max_n, tuple(rows), "positional-dp")


@lru_cache(maxsize=None)
def lambda_multivariate(max_n: int) -> tuple[dict[tuple[int, int, int], int], ...]:
    """Per n, the map (b1, b2, b3) -> number of placements with that length profile."""
    def key_of(key, length):
        if key is None:
            return (0, 0, 0)
        out = list(key)
        out[length - 1] += 1
        return tuple(out)

    return tuple(dict(counts) for _, counts in _window_dp(max_n, 3, key_of))


def aggregate_multivariate(table) -> LambdaTable:
    rows = []
    for n, counts in enumerate(table):
        row = [0] * (n // 2 + 1)
        for (b1, b2, b3), c in counts.items():
            row[b1 + b2 + b3] += c
        rows.append(tuple(row))
    return LambdaTable(len(table) - 1, tuple(rows), "multivariate-aggregate")


def _recursion_rhs(lam, n: int, b: int) -> int:
    v = (lam(n - 1, b) + lam(n - 4, b - 2) + lam(n - 5, b - 2)
         + lam(n - 6, b - 3) - lam(n - 3, b - 1))
    for i in range(1, b + 1):
        v += lam(n - 2 * i, b - i) + 2 * lam(n - 2 * i - 1, b - i) + lam(n - 2 * i - 2, b - i)
    return v


def printed_seed(n: int, b: int) -> int:
    """Printed initial values: lambda(n, 0) = 1, lambda(n, 1) = 3n - 6."""
    return 1 if b == 0 else 3 * n - 6


@lru_cache(maxsize=None)
def lambda_paper_recursion(max_n: int, seed: str = "printed") -> LambdaTable:
    """The printed recursion for b >= 2, evaluated verbatim.

    ``seed="printed"`` uses lambda(n, 1) = 3n - 6 for every n >= 2;
    ``seed="oracle"`` takes the b <= 1 cells from the positional DP instead.
    Every lambda(m, c) with m < 0, c < 0 or 2c > m is read as 0.
    """
    if seed not in ("printed", "oracle"):
        raise ValueError(f"unknown seed {seed!r}")
    dp = lambda_positional_dp(max_n)
    table: dict[tuple[int, int], int] = {}

    def lam(m: int, c: int) -> int:
        if m < 0 or c < 0 or 2 * c > m:
            return 0
        return table[(m, c)]

    for n in range(max_n + 1):
        for b in range(n // 2 + 1):
            if b <= 1:
                table[(n, b)] = printed_seed(n, b) if seed == "printed" else dp(n, b)
            else:
                table[(n, b)] = _recursion_rhs(lam, n, b)
    rows = tuple(tuple(table[(n, b)] for b in range(n // 2 + 1)) for n in range(max_n + 1))
    return LambdaTable(
        max_n, rows, "printed-recursion",
        notes=(f"seed={seed}", "lambda(n,0)=1", "out-of-range terms are 0"),
    )


@dataclass
class RecursionReport:
    max_n: int
    # cells (n, b, printed, true) where the printed seed is wrong
    seed_deviations: list
    # cells (n, b, rhs, true) where the recursion fails when fed true values
    step_deviations: list
    # cells (n, b, verbatim, true) of the verbatim table
    propagated_deviations: list
    oracle_seeded_deviations: list

    @property
    def confined_to_seeds(self) -> bool:
        return not self.step_deviations and not self.oracle_seeded_deviations

    def describe(self) -> str:
        lines = [
            f"printed seeds wrong at {[(n, b) for n, b, *_ in self.seed_deviations]}",
            f"recursion step wrong at {[(n, b) for n, b, *_ in self.step_deviations]}",
            f"verbatim table differs in {len(self.propagated_deviations)} cells"
            + (f", first {self.propagated_deviations[0]}" if self.propagated_deviations else ""),
            f"oracle-seeded table differs in {len(self.oracle_seeded_deviations)} cells",
        ]
        return "; ".join(lines)


def recursion_report(max_n: int) -> RecursionReport:
    dp = lambda_positional_dp(max_n)
    seeds = [(n, b, printed_seed(n, b), dp(n, b))
             for n in range(max_n + 1) for b in range(min(1, n // 2) + 1)
             if printed_seed(n, b) != dp(n, b)]
    steps = []
    for n in range(max_n + 1):
        for b in range(2, n // 2 + 1):
            rhs = _recursion_rhs(dp, n, b)
            if rhs != dp(n, b):
                steps.append((n, b, rhs, dp(n, b)))
    return RecursionReport(
        max_n=max_n,
        seed_deviations=seeds,
        step_deviations=steps,
        propagated_deviations=table_differences(lambda_paper_recursion(max_n), dp),
        oracle_seeded_deviations=table_differences(lambda_paper_recursion(max_n, "oracle"), dp),
    )


def table_differences(a: LambdaTable, b: LambdaTable) -> list[tuple[int, int, int, int]]:
    """Cells (n, b, a-value, b-value) where two tables disagree."""
    out = []
    for n in range(min(a.max_n, b.max_n) + 1):
        for k in range(n // 2 + 1):
            if a(n, k) != b(n, k):
                out.append((n, k, a(n, k), b(n, k)))
    return out


# ---------------------------------------------------------------------------
# phi_n(x) = sum_b lambda(n + 2b, b) x^b
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PhiSeries:
    n: int
    series: Series


def phi_series(n: int, order: int, table: LambdaTable | None = None) -> PhiSeries:
    if n < 0 or order < 1:
        raise ValueError("need n >= 0 and order >= 1")
    need = n + 2 * order
    if table is None or table.max_n < need:
        table = lambda_positional_dp(need)
    return PhiSeries(n, Series([table(n + 2 * b, b) for b in range(order + 1)], order))


def _first_mismatch(lhs: Series, rhs: Series) -> int | None:
    for i, (p, q) in enumerate(zip(lhs.coeffs, rhs.coeffs)):
        if p != q:
            return i
    return None


@dataclass
class PhiReport:
    n: int
    order: int
    # index of the first disagreeing coefficient, or None when all agree
    recurrence_mismatch: int | None
    closed_form_mismatch: int | None
    printed_closed_form_mismatch: int | None
    details: dict = field(default_factory=dict)

    @property
    def recurrence_holds(self) -> bool:
        return self.recurrence_mismatch is None

    @property
    def closed_form_holds(self) -> bool:
        return self.closed_form_mismatch is None

    def describe(self) -> str:
        def fmt(m):
            return f"holds on z^0..z^{self.order}" if m is None else f"first mismatch at z^{m}"
        return (f"phi_{self.n}: recurrence {fmt(self.recurrence_mismatch)}; "
                f"closed form {fmt(self.closed_form_mismatch)}; "
                f"printed closed form {fmt(self.printed_closed_form_mismatch)}")


def check_phi_recurrence(n: int, order: int = 12, pack: AlgebraicPack | None = None) -> PhiReport:
    """Compare phi_n with its second-order recurrence and its closed forms.

    Recurrence (denominators cleared): a*phi_n = B*phi_{n-1} + x*phi_{n-2},
    with phi_m = 0 for m < 0.  Closed form: F1 f1^n + F2 f2^n, using both the
    weights matched to the true phi_0, phi_1 and the weights fixed by
    phi_0 = phi_1 = 1.
    """
    if pack is None or pack.order < order:
        pack = build_algebraic_pack(order)
    table = lambda_positional_dp(n + 2 * order)

    def phi(m: int) -> Series:
        if m < 0:
            return Series.constant(0, order)
        return phi_series(m, order, table).series

    a = pack.a.truncate(order)
    B = pack.B.truncate(order)
    x = Series.monomial(1, order)
    lhs = a * phi(n)
    rhs = B * phi(n - 1) + x * phi(n - 2)
    f1, f2 = pack.f1.truncate(order), pack.f2.truncate(order)
    closed = pack.F1.truncate(order) * f1**n + pack.F2.truncate(order) * f2**n
    printed = pack.F1_printed.truncate(order) * f1**n + pack.F2_printed.truncate(order) * f2**n
    target = phi(n)
    return PhiReport(
        n=n, order=order,
        recurrence_mismatch=_first_mismatch(lhs, rhs),
        closed_form_mismatch=_first_mismatch(closed, target),
        printed_closed_form_mismatch=_first_mismatch(printed, target),
        details={"phi": [str(c) for c in target.coeffs]},
    )
