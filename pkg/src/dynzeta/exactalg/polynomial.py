"""Dense integer polynomials in one variable ``t``.

Coefficients are stored in ascending degree. The zero polynomial is the
empty tuple; its degree is ``-inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence

_SUPERSCRIPTS = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")


def _strip(coeffs: Sequence) -> tuple:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class IntPolynomial:
    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _strip(int(c) for c in self.coeffs))

    @classmethod
    def one(cls) -> "IntPolynomial":
        return cls((1,))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPolynomial":
        return cls((0,) * degree + (coeff,))

    @property
    def degree(self) -> float:
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self), len(other))
        return IntPolynomial(tuple(self[i] + other[i] for i in range(n)))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(tuple(other * c for c in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPolynomial":
        result = IntPolynomial.one()
        for _ in range(e):
            result = result * self
        return result

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def content(self) -> int:
        """Non-negative gcd of the coefficients (0 for the zero polynomial)."""
        return reduce(math.gcd, self.coeffs, 0)

    def primitive_part(self) -> "IntPolynomial":
        """Divide out the content; sign chosen so the leading coefficient is positive."""
        if not self.coeffs:
            return self
        c = self.content()
        if self.leading < 0:
            c = -c
        return IntPolynomial(tuple(a // c for a in self.coeffs))

    def exact_div(self, other: "IntPolynomial") -> "IntPolynomial":
        """Quotient over the integers; raises if ``other`` does not divide ``self``."""
        q, r = _divmod_q(self.coeffs, other.coeffs)
        if any(r) or any(c.denominator != 1 for c in q):
            raise ArithmeticError("polynomial division is not exact over Z")
        return IntPolynomial(tuple(int(c) for c in q))

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    def render(self, var: str = "t", unicode: bool = False) -> str:
        """Human-readable rendering, ascending degree: ``1 - t - t^2``."""
        if not self.coeffs:
            return "0"
        minus = "−" if unicode else "-"
        parts: list[str] = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                power = "" if i == 1 else (str(i).translate(_SUPERSCRIPTS) if unicode else f"^{i}")
                body = ("" if mag == 1 else str(mag)) + var + power
            if not parts:
                parts.append((minus if c < 0 else "") + body)
            else:
                parts.append((f" {minus} " if c < 0 else " + ") + body)
        return "".join(parts)


def _divmod_q(num: Sequence, den: Sequence) -> tuple[list[Fraction], list[Fraction]]:
    num = [Fraction(c) for c in _strip(num)]
    den = [Fraction(c) for c in _strip(den)]
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    if len(num) < len(den):
        return [], num
    q = [Fraction(0)] * (len(num) - len(den) + 1)
    rem = list(num)
    lead = den[-1]
    for k in range(len(q) - 1, -1, -1):
        coef = rem[k + len(den) - 1] / lead
        q[k] = coef
        if coef:
            for j, d in enumerate(den):
                rem[k + j] -= coef * d
    return q, list(_strip(rem))


def _prem(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """Pseudo-remainder lc(g)^(deg f - deg g + 1) * f mod g, over Z."""
    r = list(f.coeffs)
    dg = len(g) - 1
    lead = g.leading
    delta = len(f) - len(g) + 1
    while len(r) - 1 >= dg and r:
        shift = len(r) - 1 - dg
        top = r[-1]
        r = [lead * c for c in r]
        for j, c in enumerate(g.coeffs):
            r[shift + j] -= top * c
        r = list(_strip(r))
        delta -= 1
    return IntPolynomial(tuple(r)) * (lead ** max(delta, 0))


def poly_gcd(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """gcd over Q, returned as a primitive integer polynomial with positive leading term.

    Primitive polynomial remainder sequence: contents are split off first,
    then each pseudo-remainder is reduced to its primitive part.
    """
    if not f:
        return g.primitive_part()
    if not g:
        return f.primitive_part()
    a, b = f.primitive_part(), g.primitive_part()
    if a.degree < b.degree:
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, (r.primitive_part() if r else r)
    return a.primitive_part()


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    """p / gcd(p, p'), primitive."""
    if p.degree < 1:
        return p
    return p.primitive_part().exact_div(poly_gcd(p, p.derivative()))


# -- real roots ---------------------------------------------------------------


def _to_fractions(p: IntPolynomial) -> list[Fraction]:
    return [Fraction(c) for c in p.coeffs]


def _eval_q(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def sturm_sequence(p: IntPolynomial) -> list[list[Fraction]]:
    seq = [_to_fractions(p), _to_fractions(p.derivative())]
    while seq[-1]:
        _, r = _divmod_q(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _sign_changes(seq: Sequence[Sequence[Fraction]], x: Fraction) -> int:
    signs = [v for v in (_eval_q(s, x) for s in seq) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def count_real_roots(p: IntPolynomial, lo: Fraction, hi: Fraction, seq=None) -> int:
    """Number of distinct real roots in the half-open interval (lo, hi]."""
    seq = seq if seq is not None else sturm_sequence(p)
    return _sign_changes(seq, Fraction(lo)) - _sign_changes(seq, Fraction(hi))


def cauchy_bound(p: IntPolynomial) -> Fraction:
    lead = abs(p.leading)
    return 1 + Fraction(max((abs(c) for c in p.coeffs[:-1]), default=0), lead)


def smallest_positive_root(p: IntPolynomial, tol: Fraction = Fraction(1, 10**14)) -> tuple[Fraction, Fraction] | None:
    """Enclose the smallest positive real root of ``p`` in ``(lo, hi]`` of width < tol.

    Bisection driven by exact Sturm counts, so roots of even multiplicity
    (no sign change) are still found. Returns None when there is no
    positive root.
    """
    if p.degree < 1:
        return None
    p = squarefree_part(p)
    seq = sturm_sequence(p)
    lo, hi = Fraction(0), cauchy_bound(p)
    if count_real_roots(p, lo, hi, seq) == 0:
        return None
    tol = Fraction(tol)
    while hi - lo >= tol:
        mid = (lo + hi) / 2
        if count_real_roots(p, lo, mid, seq) > 0:
            hi = mid
        else:
            lo = mid
    return lo, hi


def complex_roots(p: IntPolynomial, dps: int = 50) -> list[complex]:
    """All complex roots, numerically, via Durand-Kerner (mpmath.polyroots)."""
    import mpmath

    if p.degree < 1:
        return []
    # strip roots at zero; polyroots wants a nonzero constant term
    coeffs = list(p.coeffs)
    zeros = 0
    while coeffs[0] == 0:
        coeffs.pop(0)
        zeros += 1
    with mpmath.workdps(dps):
        roots = mpmath.polyroots(list(reversed(coeffs)), maxsteps=400, extraprec=4 * dps) if len(coeffs) > 1 else []
        out = [complex(r) for r in roots]
    return [0j] * zeros + out


def render_superscript(n: int) -> str:
    return str(n).translate(_SUPERSCRIPTS)
