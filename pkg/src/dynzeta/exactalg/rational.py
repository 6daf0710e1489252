"""String codec for exact rationals.

Rationals are ``fractions.Fraction`` throughout the package; on the wire they
are strings ``"p/q"`` or ``"p"`` when the denominator is one.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

RationalLike = Union[Fraction, int, str]


def parse_rational(value: RationalLike) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a reduced Fraction.

    Floats are refused on purpose: a float on input would silently
    smuggle a binary approximation into an exact computation.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational string")
        num, sep, den = text.partition("/")
        try:
            if sep:
                q = int(den)
                if q == 0:
                    raise ValueError(f"zero denominator in {value!r}")
                return Fraction(int(num), q)
            return Fraction(int(num))
        except ValueError as exc:
            raise ValueError(f"not an exact rational: {value!r}") from exc
    raise TypeError(f"cannot read {type(value).__name__} as an exact rational")


def format_rational(value: Fraction | int) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
