from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .polynomial import IntPolynomial, poly_gcd
from .series import DEFAULT_ORDER, TruncatedSeries


@dataclass(frozen=True)
class RationalFunction:
    """num/den over the integers, always kept in canonical form.

    Canonical means: gcd(num, den) = 1 over Q, the combined content of the
    two coefficient lists is 1, and the sign is fixed by den(0) > 0 (or by
    the leading coefficient of den when den(0) = 0). Two representations of
    the same function therefore compare equal field by field.
    """

    num: IntPolynomial
    den: IntPolynomial

    def __post_init__(self) -> None:
        num, den = self.num, self.den
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            num, den = IntPolynomial(), IntPolynomial.one()
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
            c = reduce(math.gcd, num.coeffs + den.coeffs, 0)
            pivot = den[0] if den[0] != 0 else den.leading
            if pivot < 0:
                c = -c
            num = IntPolynomial(tuple(a // c for a in num.coeffs))
            den = IntPolynomial(tuple(a // c for a in den.coeffs))
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def from_coeffs(cls, num, den=(1,)) -> "RationalFunction":
        return cls(IntPolynomial(tuple(num)), IntPolynomial(tuple(den)))

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if not other.num:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __call__(self, x):
        return Fraction(self.num(Fraction(x))) / self.den(Fraction(x))

    def render(self, unicode: bool = False) -> str:
        num = self.num.render(unicode=unicode)
        if self.den.coeffs == (1,):
            return num
        den = self.den.render(unicode=unicode)
        if len([c for c in self.num.coeffs if c]) > 1:
            num = f"({num})"
        if len([c for c in self.den.coeffs if c]) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}


def series_of_rational(f: RationalFunction, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Taylor coefficients of f at 0 through t^order, by long division."""
    d0 = f.den[0]
    if d0 == 0:
        raise ZeroDivisionError("rational function has a pole at the origin")
    out: list[Fraction] = []
    for n in range(order + 1):
        acc = Fraction(f.num[n]) - sum((f.den[k] * out[n - k] for k in range(1, min(n, len(f.den) - 1) + 1)), Fraction(0))
        out.append(acc / d0)
    return TruncatedSeries(tuple(out))
