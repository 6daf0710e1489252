"""Subshifts of finite type.

Periodic-point counts, the determinant formula for the zeta function,
irreducibility, Perron data and the growth rate of periodic points.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactalg import (
    IntMatrix,
    RationalFunction,
    TruncatedSeries,
    charpoly_rev,
    log_series_from_counts,
    series_exp,
    smallest_positive_root,
    trace_powers,
)
from .exactalg.polynomial import IntPolynomial

ENUMERATION_BUDGET = 10**7


class EnumerationBudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class TransitionMatrix:
    """0/1 transition matrix on symbols 0..k-1."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(v) for v in row) for row in self.rows)
        if not rows:
            raise ValueError("transition matrix needs k >= 1")
        for row in rows:
            if len(row) != len(rows):
                raise ValueError("transition matrix must be square")
            if any(v not in (0, 1) for v in row):
                raise ValueError("transition matrix entries must be 0 or 1")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "TransitionMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def full_shift(cls, k: int) -> "TransitionMatrix":
        return cls(tuple((1,) * k for _ in range(k)))

    @property
    def k(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.rows[ij[0]][ij[1]]

    def as_int_matrix(self) -> IntMatrix:
        return IntMatrix(self.rows)

    def to_json(self) -> dict:
        return {"k": self.k, "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> "TransitionMatrix":
        rows = data["rows"]
        k = data.get("k", len(rows))
        if k != len(rows):
            raise ValueError(f"declared k={k} but {len(rows)} rows given")
        return cls.from_rows(rows)


@dataclass(frozen=True)
class CountSequence:
    """N_1, ..., N_max of periodic points (counts[0] is period 1)."""

    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        counts = tuple(int(c) for c in self.counts)
        if any(c < 0 for c in counts):
            raise ValueError("periodic-point counts are non-negative")
        object.__setattr__(self, "counts", counts)

    @property
    def max_period(self) -> int:
        return len(self.counts)

    def __getitem__(self, n: int) -> int:
        """N_n, 1-based."""
        if not 1 <= n <= len(self.counts):
            raise IndexError(n)
        return self.counts[n - 1]

    def to_json(self) -> dict:
        return {"counts": list(self.counts)}


@dataclass(frozen=True)
class GrowthStats:
    """Growth rate L of periodic points and the radius rho = exp(-L).

    ``L`` is an estimate from finitely many counts (max of log(N_n)/n over
    the tail window), never an exact limsup. ``None`` means undefined.
    """

    L: float | None
    rho: float | None
    perron_root: float | None = None
    tolerance: float = 1e-12
    window: tuple[int, ...] = field(default=())


def _check_symbol(a: TransitionMatrix, s: int) -> None:
    if not 0 <= s < a.k:
        raise IndexError(f"symbol {s} out of range 0..{a.k - 1}")


def count_paths(a: TransitionMatrix, p: int, q: int, n: int) -> int:
    """Admissible words of length n+1 from p to q, i.e. (A^n)_{pq}."""
    _check_symbol(a, p)
    _check_symbol(a, q)
    if n < 1:
        raise ValueError("path length n must be >= 1")
    return a.as_int_matrix().power(n)[p, q]


def periodic_counts(a: TransitionMatrix, n_max: int) -> CountSequence:
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    return CountSequence(tuple(trace_powers(a.as_int_matrix(), n_max)))


def enumerate_periodic_words(a: TransitionMatrix, n: int) -> list[tuple[int, ...]]:
    """Brute force: every word a_0..a_{n-1} with A[a_i, a_{i+1 mod n}] = 1."""
    if n < 1:
        raise ValueError("word length must be >= 1")
    if a.k**n > ENUMERATION_BUDGET:
        raise EnumerationBudgetExceeded(f"{a.k}^{n} words exceeds budget {ENUMERATION_BUDGET}")
    return [
        w
        for w in itertools.product(range(a.k), repeat=n)
        if all(a[w[i], w[(i + 1) % n]] for i in range(n))
    ]


def sft_zeta(a: TransitionMatrix) -> RationalFunction:
    return RationalFunction(IntPolynomial.one(), charpoly_rev(a.as_int_matrix()))


def zeta_series_from_trace_counts(a: TransitionMatrix, order: int) -> TruncatedSeries:
    counts = periodic_counts(a, order).counts
    return series_exp(log_series_from_counts(counts, order))


def is_irreducible(a: TransitionMatrix) -> bool:
    """Every symbol reaches every symbol along some path of length >= 1."""
    k = a.k
    for start in range(k):
        seen: set[int] = set()
        frontier = [j for j in range(k) if a[start, j]]
        while frontier:
            j = frontier.pop()
            if j in seen:
                continue
            seen.add(j)
            frontier.extend(m for m in range(k) if a[j, m] and m not in seen)
        if len(seen) < k:
            return False
    return True


def perron_root(a: TransitionMatrix, tol: float = 1e-12) -> float:
    """Perron eigenvalue of an irreducible A.

    1/lambda is the smallest positive root of det(I - tA); it is enclosed by
    exact Sturm bisection and only converted to float at the end.
    """
    if not is_irreducible(a):
        raise ValueError("Perron data is only reported for irreducible matrices")
    q = charpoly_rev(a.as_int_matrix())
    bracket = smallest_positive_root(q, Fraction(tol) / 16)
    if bracket is None:
        raise ArithmeticError("irreducible matrix without a positive root of det(I - tA)")
    lo, hi = bracket
    return float(2 / (lo + hi))


def growth_stats(counts: CountSequence, perron: float | None = None, tol: float = 1e-12) -> GrowthStats:
    """Estimate L = limsup log(N_n)/n from the last ceil(n_max/2) periods."""
    if counts.max_period == 0:
        raise ValueError("no counts")
    n_max = counts.max_period
    start = n_max - math.ceil(n_max / 2) + 1
    window = tuple(range(start, n_max + 1))
    rates = [math.log(counts[n]) / n for n in window if counts[n] > 0]
    if not rates:
        return GrowthStats(L=None, rho=None, perron_root=perron, tolerance=tol, window=window)
    L = max(rates)
    return GrowthStats(L=L, rho=math.exp(-L), perron_root=perron, tolerance=tol, window=window)


def divisor_sum(n: int) -> int:
    return sum(d for d in range(1, n + 1) if n % d == 0)


def divisor_example_series(order: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Zeta series for N_n = sigma(n) + 1 and the companion s(t) = 1/((1-t) zeta).

    s is obtained by exact series division; its integrality is checked.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    counts = [divisor_sum(n) + 1 for n in range(1, order + 1)]
    zeta = series_exp(log_series_from_counts(counts, order))
    one_minus_t = TruncatedSeries.from_coeffs([1, -1], order)
    s = (one_minus_t * zeta).inverse()
    if not s.is_integral():
        raise ArithmeticError("s(t) acquired non-integer coefficients")
    return zeta, s


def expansive_bound_check(counts: CountSequence, r: int) -> bool:
    """N_n <= r^n for every recorded n."""
    if r < 1:
        raise ValueError("cover size r must be >= 1")
    return all(c <= r**n for n, c in enumerate(counts.counts, start=1))
