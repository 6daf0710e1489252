"""Piecewise-affine expanding circle maps with rational data.

A :class:`CircleMap` is an orientation preserving degree-k covering of
R/Z whose lift is affine on finitely many arcs with slopes > 1. Every
quantity of interest (preimages, the separation constant c, contractive
branches, shadows of pseudo-orbits, periodic points) is computed exactly.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .circleset import circle_dist, mod1, signed_offset
from .exactalg import format_rational, parse_rational

PIECE_BUDGET = 2_000_000


class PreconditionError(ValueError):
    """An input violates a stated inequality; the message names it."""


@dataclass(frozen=True)
class Branch:
    start: Fraction
    end: Fraction
    slope: Fraction
    intercept: Fraction

    def to_json(self) -> dict:
        return {
            "from": format_rational(self.start),
            "to": format_rational(self.end),
            "slope": format_rational(self.slope),
            "intercept": format_rational(self.intercept),
        }


@dataclass(frozen=True)
class CircleMap:
    degree: int
    branches: tuple[Branch, ...]
    # continuous lift: F(x) = slope_i * x + lift_intercepts[i] on branch i
    lift_intercepts: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)
    _starts: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)
    _lift_starts: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        branches = tuple(sorted(self.branches, key=lambda b: b.start))
        if not branches:
            raise ValueError("a circle map needs at least one branch")
        if self.degree < 2:
            raise ValueError("degree must be >= 2")
        if branches[0].start != 0 or branches[-1].end != 1:
            raise ValueError("branch domains must partition [0, 1)")
        for a, b in zip(branches, branches[1:]):
            if a.end != b.start:
                raise ValueError(f"branch domains do not tile: {a.end} vs {b.start}")
        for b in branches:
            if not b.start < b.end:
                raise ValueError("empty branch domain")
            if b.slope <= 0:
                raise ValueError("orientation-reversing or constant branch")
        intercepts = [branches[0].intercept]
        for a, b in zip(branches, branches[1:]):
            left = a.slope * a.end + intercepts[-1]
            right = b.slope * b.start + b.intercept
            jump = left - right
            if jump.denominator != 1:
                raise ValueError(f"map is discontinuous at {format_rational(a.end)}")
            intercepts.append(b.intercept + jump)
        winding = branches[-1].slope + intercepts[-1] - intercepts[0]
        if winding != self.degree:
            raise ValueError(f"total winding {winding} does not match degree {self.degree}")
        object.__setattr__(self, "branches", branches)
        object.__setattr__(self, "lift_intercepts", tuple(intercepts))
        object.__setattr__(self, "_starts", tuple(b.start for b in branches))
        object.__setattr__(
            self,
            "_lift_starts",
            tuple(b.slope * b.start + c for b, c in zip(branches, intercepts)),
        )

    # -- constructors -------------------------------------------------------

    @classmethod
    def linear(cls, k: int) -> "CircleMap":
        """x -> kx mod 1."""
        return cls(k, (Branch(Fraction(0), Fraction(1), Fraction(k), Fraction(0)),))

    @classmethod
    def from_json(cls, data: dict) -> "CircleMap":
        branches = tuple(
            Branch(
                parse_rational(b["from"]),
                parse_rational(b["to"]),
                parse_rational(b["slope"]),
                parse_rational(b["intercept"]),
            )
            for b in data["branches"]
        )
        return cls(int(data["degree"]), branches)

    def to_json(self) -> dict:
        return {"degree": self.degree, "branches": [b.to_json() for b in self.branches]}

    # -- the lift -----------------------------------------------------------

    def _branch_index(self, x0: Fraction) -> int:
        return bisect.bisect_right(self._starts, x0) - 1

    def lift(self, x) -> Fraction:
        """Continuous increasing lift F with F(x + 1) = F(x) + degree."""
        x = Fraction(x)
        m = math.floor(x)
        x0 = x - m
        i = self._branch_index(x0)
        return self.branches[i].slope * x0 + self.lift_intercepts[i] + m * self.degree

    def lift_inverse(self, y) -> Fraction:
        y = Fraction(y)
        f0 = self._lift_starts[0]
        m = math.floor((y - f0) / self.degree)
        y0 = y - m * self.degree
        i = bisect.bisect_right(self._lift_starts, y0) - 1
        return (y0 - self.lift_intercepts[i]) / self.branches[i].slope + m

    def lift_inverse_affine(self, y) -> tuple[Fraction, Fraction]:
        """(slope, intercept) of the affine piece of the inverse lift used at y."""
        y = Fraction(y)
        m = math.floor((y - self._lift_starts[0]) / self.degree)
        i = bisect.bisect_right(self._lift_starts, y - m * self.degree) - 1
        s = self.branches[i].slope
        return 1 / s, m - (m * self.degree + self.lift_intercepts[i]) / s

    @property
    def min_slope(self) -> Fraction:
        return min(b.slope for b in self.branches)

    @property
    def max_slope(self) -> Fraction:
        return max(b.slope for b in self.branches)


@dataclass(frozen=True)
class RuelleConstants:
    r: Fraction
    lam: Fraction
    c: Fraction
    epsilon: Fraction

    def to_json(self) -> dict:
        return {k: format_rational(v) for k, v in (("r", self.r), ("lambda", self.lam), ("c", self.c), ("epsilon", self.epsilon))}


@dataclass(frozen=True)
class PseudoOrbit:
    """Finite alpha-pseudo-orbit; checked against ``circle_map`` when one is given."""

    points: tuple[Fraction, ...]
    alpha: Fraction
    circle_map: CircleMap | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(mod1(p) for p in self.points))
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if not self.points:
            raise ValueError("empty pseudo-orbit")
        if self.circle_map is not None:
            self.check(self.circle_map)

    def check(self, f: CircleMap) -> None:
        for n, (x, y) in enumerate(zip(self.points, self.points[1:])):
            step = circle_dist(evaluate(f, x), y)
            if not step < self.alpha:
                raise PreconditionError(
                    f"d(f(x_{n}), x_{n + 1}) = {format_rational(step)} is not < alpha = {format_rational(self.alpha)}"
                )


def evaluate(f: CircleMap, x) -> Fraction:
    return mod1(f.lift(mod1(x)))


def evaluate_iter(f: CircleMap, x, n: int) -> Fraction:
    x = mod1(x)
    for _ in range(n):
        x = evaluate(f, x)
    return x


def orbit(f: CircleMap, x, n: int) -> list[Fraction]:
    """x, f(x), ..., f^n(x)."""
    out = [mod1(x)]
    for _ in range(n):
        out.append(evaluate(f, out[-1]))
    return out


def inverse_branches(f: CircleMap, x) -> list[Fraction]:
    """All k solutions of f(a) = x, ascending in [0, 1)."""
    x = mod1(x)
    return sorted(mod1(f.lift_inverse(x + j)) for j in range(f.degree))


def preimage_gap(f: CircleMap, x) -> Fraction:
    """Smallest gap between cyclically consecutive preimages of x."""
    lifts = [f.lift_inverse(mod1(x) + j) for j in range(f.degree + 1)]
    return min(b - a for a, b in zip(lifts, lifts[1:]))


def ruelle_constants(f: CircleMap) -> RuelleConstants:
    """Exact constants (r, lambda, c, epsilon) witnessing the Ruelle-expanding axioms.

    lambda is the inverse of the smallest slope. The preimage gaps are
    piecewise affine in x with breaks only where a preimage crosses a
    branch boundary, so c is the minimum over the images of branch
    endpoints. r = c/2 keeps the inverse branches on B_r(x) disjoint and
    single-valued. epsilon = 1/(2 * max slope): a short arc of length at
    most epsilon is mapped injectively onto an arc at most 1/2 long, so
    separations grow by 1/lambda until they exceed epsilon.
    """
    if f.min_slope <= 1:
        raise PreconditionError(f"map is not expanding: min slope {format_rational(f.min_slope)} <= 1")
    lam = 1 / f.min_slope
    candidates = {evaluate(f, b.start) for b in f.branches}
    c = min(preimage_gap(f, x) for x in candidates)
    r = c / 2
    epsilon = 1 / (2 * f.max_slope)
    return RuelleConstants(r=r, lam=lam, c=c, epsilon=epsilon)


def local_inverse(f: CircleMap, z, w, y) -> Fraction:
    """The inverse branch through f(w) = z, evaluated at y near z."""
    z, w = mod1(z), mod1(w)
    zhat = f.lift(w)
    if mod1(zhat) != z:
        raise ValueError("w is not a preimage of z")
    return mod1(f.lift_inverse(zhat + signed_offset(y, z)))


def contractive_branch(f: CircleMap, x, a, n: int, y, constants: RuelleConstants | None = None) -> Fraction:
    """g(y) for the contractive branch g of f^{-n} on B_r(x) with g(x) = a.

    Built by composing single-step inverse branches along the orbit of a;
    the contraction certificate is checked exactly before returning.
    """
    consts = constants or ruelle_constants(f)
    x, a, y = mod1(x), mod1(a), mod1(y)
    path = orbit(f, a, n)
    if path[-1] != x:
        raise PreconditionError(f"f^{n}(a) != x")
    dxy = circle_dist(x, y)
    if not dxy < consts.r:
        raise PreconditionError(f"d(x, y) = {format_rational(dxy)} is not < r = {format_rational(consts.r)}")
    ys = [y]
    for j in range(n - 1, -1, -1):
        ys.append(local_inverse(f, path[j + 1], path[j], ys[-1]))
    ys.reverse()  # ys[j] = f^j(g(y))
    for j in range(n + 1):
        if circle_dist(ys[j], path[j]) > consts.lam ** (n - j) * dxy:
            raise ArithmeticError("contraction certificate failed")
    if evaluate_iter(f, ys[0], n) != y:
        raise ArithmeticError("branch is not a right inverse of f^n")
    return ys[0]


def shadow_conditions(consts: RuelleConstants, alpha, beta) -> None:
    alpha, beta = Fraction(alpha), Fraction(beta)
    if not 0 < beta < consts.r:
        raise PreconditionError(f"need 0 < beta < r: beta = {format_rational(beta)}, r = {format_rational(consts.r)}")
    bound = min(consts.r - beta, (1 - consts.lam) * beta / consts.lam)
    if not 0 < alpha < bound:
        raise PreconditionError(
            f"need alpha < min(r - beta, (1 - lambda) beta / lambda) = {format_rational(bound)}: "
            f"alpha = {format_rational(alpha)}"
        )


def shadow(f: CircleMap, po: PseudoOrbit, beta, constants: RuelleConstants | None = None) -> Fraction:
    """A beta-shadow of a finite pseudo-orbit by backward contraction.

    y_n = x_n, y_{k-1} = g_k(y_k) with g_k the inverse branch of f through
    f(x_{k-1}) -> x_{k-1}. The result x = y_0 satisfies
    d(f^i(x), x_i) < beta for every i, which is verified exactly.
    """
    consts = constants or ruelle_constants(f)
    beta = Fraction(beta)
    shadow_conditions(consts, po.alpha, beta)
    po.check(f)
    xs = po.points
    y = xs[-1]
    ys = [y]
    for k in range(len(xs) - 1, 0, -1):
        y = local_inverse(f, evaluate(f, xs[k - 1]), xs[k - 1], y)
        ys.append(y)
    ys.reverse()
    x = ys[0]
    cur = x
    for i, target in enumerate(xs):
        if not circle_dist(cur, target) < beta:
            raise ArithmeticError(f"shadow certificate failed at i={i}")
        cur = evaluate(f, cur)
    return x


@dataclass(frozen=True)
class _Piece:
    a: Fraction
    b: Fraction
    slope: Fraction
    shift: Fraction  # lift of f^p is slope * x + shift on [a, b]


def _iterate_pieces(f: CircleMap, p: int, budget: int) -> list[_Piece]:
    pieces = [_Piece(Fraction(0), Fraction(1), Fraction(1), Fraction(0))]
    starts = f._starts
    for _ in range(p):
        nxt = []
        for pc in pieces:
            ya, yb = pc.slope * pc.a + pc.shift, pc.slope * pc.b + pc.shift
            cuts = []
            for m in range(math.floor(ya), math.floor(yb) + 1):
                for u in starts:
                    bp = u + m
                    if ya < bp < yb:
                        cuts.append((bp - pc.shift) / pc.slope)
            xs = [pc.a] + sorted(cuts) + [pc.b]
            for lo, hi in zip(xs, xs[1:]):
                ymid = pc.slope * (lo + hi) / 2 + pc.shift
                m = math.floor(ymid)
                i = f._branch_index(ymid - m)
                s = f.branches[i].slope
                shift = s * (pc.shift - m) + f.lift_intercepts[i] + m * f.degree
                nxt.append(_Piece(lo, hi, s * pc.slope, shift))
        if len(nxt) > budget:
            raise PreconditionError(f"{len(nxt)} affine pieces exceed the budget {budget}")
        pieces = nxt
    return pieces


def periodic_points(f: CircleMap, p: int, budget: int = PIECE_BUDGET) -> list[Fraction]:
    """All x in [0, 1) with f^p(x) = x, exact and ascending.

    The lift of f^p is refined into affine pieces s*x + b; on each piece the
    fixed points of the circle map solve s*x + b - x = m for integers m.
    """
    if p < 1:
        raise ValueError("period must be >= 1")
    found = set()
    for pc in _iterate_pieces(f, p, budget):
        s1 = pc.slope - 1
        ha, hb = s1 * pc.a + pc.shift, s1 * pc.b + pc.shift
        for m in range(math.ceil(ha), math.ceil(hb)):
            # half-open [a, b) so shared piece endpoints are counted once
            x = (m - pc.shift) / s1
            if pc.a <= x < pc.b:
                found.add(x)
    return sorted(found)


def degree_and_entropy(f: CircleMap) -> tuple[int, float]:
    """(k, log k): every point has exactly k preimages, so h(f) = log k."""
    return f.degree, math.log(f.degree)
