"""Truncated formal power series with exact rational coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .rational import format_rational

DEFAULT_ORDER = 32


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients of t^0 .. t^order; everything above ``order`` is unknown."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("a truncated series needs at least the constant term")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, order: int | None = None) -> "TruncatedSeries":
        coeffs = list(coeffs)
        if order is not None:
            coeffs = (coeffs + [0] * (order + 1))[: order + 1]
        return cls(tuple(coeffs))

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls((Fraction(0),) * (order + 1))

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls.from_coeffs([1], order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def _check(self, other: "TruncatedSeries") -> None:
        if other.order != self.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(tuple(-a for a in self.coeffs))

    def scale(self, c) -> "TruncatedSeries":
        c = Fraction(c)
        return TruncatedSeries(tuple(c * a for a in self.coeffs))

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        n = self.order
        a, b = self.coeffs, other.coeffs
        return TruncatedSeries(tuple(sum((a[i] * b[k - i] for i in range(k + 1)), Fraction(0)) for k in range(n + 1)))

    def inverse(self) -> "TruncatedSeries":
        if self.coeffs[0] == 0:
            raise ZeroDivisionError("series with zero constant term has no inverse")
        a = self.coeffs
        out = [1 / a[0]]
        for k in range(1, self.order + 1):
            out.append(-sum((a[i] * out[k - i] for i in range(1, k + 1)), Fraction(0)) / a[0])
        return TruncatedSeries(tuple(out))

    def __truediv__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self * other.inverse()

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(self.coeffs[: order + 1])

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]


def series_exp(s: TruncatedSeries) -> TruncatedSeries:
    """exp(s) for s with zero constant term.

    Uses g' = s' g, i.e. n g_n = sum_{k=1..n} k s_k g_{n-k}.
    """
    if s[0] != 0:
        raise ValueError("series_exp needs a zero constant term")
    g = [Fraction(1)]
    for n in range(1, s.order + 1):
        g.append(sum((k * s[k] * g[n - k] for k in range(1, n + 1)), Fraction(0)) / n)
    return TruncatedSeries(tuple(g))


def series_log(u: TruncatedSeries) -> TruncatedSeries:
    """log(u) for u with constant term 1; inverse of :func:`series_exp`."""
    if u[0] != 1:
        raise ValueError("series_log needs constant term 1")
    out = [Fraction(0)]
    for n in range(1, u.order + 1):
        acc = n * u[n] - sum((k * out[k] * u[n - k] for k in range(1, n)), Fraction(0))
        out.append(acc / n)
    return TruncatedSeries(tuple(out))


def log_series_from_counts(counts: Sequence[int], order: int) -> TruncatedSeries:
    """sum_{n=1..order} N_n t^n / n."""
    if order > len(counts):
        raise ValueError(f"order {order} exceeds the {len(counts)} available counts")
    return TruncatedSeries((Fraction(0),) + tuple(Fraction(counts[n - 1], n) for n in range(1, order + 1)))
