"""Square integer matrices with unbounded entries."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .polynomial import IntPolynomial


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(v) for v in row) for row in self.rows)
        n = len(rows)
        if n == 0:
            raise ValueError("matrix must have positive dimension")
        for row in rows:
            if len(row) != n:
                raise ValueError(f"matrix is not square: {n} rows, row of length {len(row)}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> "IntMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, n: int) -> "IntMatrix":
        return cls(tuple((0,) * n for _ in range(n)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        # row by row, skipping zero entries: the matrices in use are sparse
        n = self.dim
        out = []
        for row in self.rows:
            acc = [0] * n
            for k, a in enumerate(row):
                if a:
                    acc = [x + a * y for x, y in zip(acc, other.rows[k])]
            out.append(tuple(acc))
        return IntMatrix(tuple(out))

    def trace_of_product(self, other: "IntMatrix") -> int:
        """tr(self @ other) without forming the product."""
        return sum(a * other.rows[k][i] for i, row in enumerate(self.rows) for k, a in enumerate(row) if a)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        )

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(c * a for a in r) for r in self.rows))

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.dim))

    def power(self, p: int) -> "IntMatrix":
        if p < 0:
            raise ValueError("negative matrix power")
        result = IntMatrix.identity(self.dim)
        for _ in range(p):
            result = self @ result
        return result

    def to_json(self) -> list[list[str]]:
        return [[str(v) for v in row] for row in self.rows]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[int | str]]) -> "IntMatrix":
        return cls.from_rows([[int(v) for v in row] for row in data])


def trace_power(m: IntMatrix, p: int) -> int:
    """tr(M^p) by repeated exact multiplication."""
    if p < 1:
        raise ValueError("trace_power needs p >= 1")
    return m.power(p).trace()


def trace_powers(m: IntMatrix, p_max: int) -> list[int]:
    """[tr(M), tr(M^2), ..., tr(M^p_max)] sharing the running product."""
    out = []
    acc = m
    for p in range(1, p_max + 1):
        if p > 1:
            acc = m @ acc
        out.append(acc.trace())
    return out


def charpoly_rev(m: IntMatrix) -> IntPolynomial:
    """det(I - tM) as an integer polynomial in t.

    Faddeev-LeVerrier over the integers. Every division in the recurrence
    is exact (the coefficients of an integer characteristic polynomial are
    integers), and that is asserted rather than assumed.
    """
    n = m.dim
    # c[j] is the coefficient of x^(n-j) in det(xI - M); c[0] = 1
    c = [1]
    acc = IntMatrix.zeros(n)
    ident = IntMatrix.identity(n)
    for k in range(1, n + 1):
        acc = (m @ acc) + ident.scale(c[k - 1])
        t = m.trace_of_product(acc)
        if t % k:
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        c.append(-t // k)
    # det(I - tM) = t^n det(t^{-1} I - M) = sum_j c[j] t^j
    return IntPolynomial(tuple(c))
