"""Periodic-point counts and zeta functions from the signed overlap matrices.

N_p = sum_r (-1)^(r-1) tr((B^(r))^p) and
zeta = prod_{r even} det(I - tB^(r)) / prod_{r odd} det(I - tB^(r)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .circleset import mod1
from .exactalg import (
    IntMatrix,
    IntPolynomial,
    RationalFunction,
    TruncatedSeries,
    charpoly_rev,
    complex_roots,
    log_series_from_counts,
    series_exp,
    series_of_rational,
    smallest_positive_root,
    trace_powers,
)
from .markovcover import (
    IndexFamily,
    MarkovCover,
    SignedTransition,
    index_families,
    index_families_from_overlaps,
    signed_matrices,
    transition_matrix,
)
from .ruellemap import PreconditionError, evaluate, evaluate_iter
from .shiftspace import CountSequence, TransitionMatrix

RHO_TOLERANCE = 1e-9


@dataclass(frozen=True)
class CoverSpectrum:
    a: TransitionMatrix
    levels: tuple[SignedTransition, ...]

    def __post_init__(self) -> None:
        if not self.levels:
            raise ValueError("a spectrum needs at least the first level")
        if self.levels[0].a_matrix.rows != self.a.rows:
            raise ValueError("level 1 must carry the transition matrix itself")
        for r, lvl in enumerate(self.levels, start=1):
            if lvl.r != r or len(lvl.index) == 0:
                raise ValueError(f"level {r} is missing or empty")

    @property
    def L(self) -> int:
        return len(self.levels)

    @classmethod
    def from_families(cls, a: TransitionMatrix, families: Sequence[IndexFamily]) -> "CoverSpectrum":
        return cls(a, tuple(signed_matrices(a, fam) for fam in families if len(fam)))

    @classmethod
    def from_cover(cls, cover: MarkovCover) -> "CoverSpectrum":
        return cls.from_families(transition_matrix(cover), index_families(cover))

    @classmethod
    def from_sft(cls, a: TransitionMatrix) -> "CoverSpectrum":
        """Abstract cover of a subshift by its cylinder sets: no overlaps, L = 1."""
        return cls.from_families(a, index_families_from_overlaps(a.k, []))

    def replace_level(self, r: int, b_matrix: IntMatrix) -> "CoverSpectrum":
        """Copy with B^(r) swapped out (used for fault injection)."""
        old = self.levels[r - 1]
        new = SignedTransition(old.r, old.index, old.a_matrix, b_matrix, old.perms)
        return CoverSpectrum(self.a, self.levels[: r - 1] + (new,) + self.levels[r:])

    def to_json(self) -> dict:
        return {"A": self.a.to_json(), "L": self.L, "levels": [lvl.to_json() for lvl in self.levels]}


def signed_traces(spec: CoverSpectrum, p_max: int) -> list[int]:
    """sum over r of (-1)^(r-1) tr((B^(r))^p) for p = 1..p_max, with no sign checks."""
    if p_max < 1:
        raise ValueError("p_max must be >= 1")
    totals = [0] * p_max
    for lvl in spec.levels:
        sign = 1 if lvl.r % 2 == 1 else -1
        for p, tr in enumerate(trace_powers(lvl.b_matrix, p_max)):
            totals[p] += sign * tr
    return totals


def counts_via_cover(spec: CoverSpectrum, p_max: int) -> CountSequence:
    totals = signed_traces(spec, p_max)
    for p, n in enumerate(totals, start=1):
        if n < 0:
            raise ArithmeticError(f"signed trace sum at p = {p} is {n}; the overlap data cannot come from a cover")
    return CountSequence(tuple(totals))


@dataclass(frozen=True)
class CoverZeta:
    zeta: RationalFunction
    numerator_product: IntPolynomial
    denominator_product: IntPolynomial
    factors: tuple[IntPolynomial, ...]


def zeta_via_cover_detail(spec: CoverSpectrum) -> CoverZeta:
    num, den = IntPolynomial.one(), IntPolynomial.one()
    factors = []
    for lvl in spec.levels:
        q = charpoly_rev(lvl.b_matrix)
        factors.append(q)
        if lvl.r % 2 == 0:
            num = num * q
        else:
            den = den * q
    return CoverZeta(RationalFunction(num, den), num, den, tuple(factors))


def zeta_via_cover(spec: CoverSpectrum) -> RationalFunction:
    return zeta_via_cover_detail(spec).zeta


def zeta_series_from_counts(counts: CountSequence, order: int) -> TruncatedSeries:
    if order < 0:
        raise ValueError("order must be >= 0")
    if order > counts.max_period:
        raise ValueError(f"order {order} exceeds the {counts.max_period} available counts")
    return series_exp(log_series_from_counts(counts.counts[:order], order))


def consistency_check(spec: CoverSpectrum, order: int, counts: CountSequence | None = None) -> bool:
    """Series of the determinant ratio against exp of a count sequence, to ``order``.

    Without ``counts`` the spectrum's own signed traces are used; that side
    is an identity for any integer matrices, so it catches arithmetic faults
    only. Pass oracle counts (from the map) to also catch a wrong B^(r).
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    lhs = series_of_rational(zeta_via_cover(spec), order)
    raw = signed_traces(spec, order) if counts is None else counts.counts
    if len(raw) < order:
        raise ValueError(f"order {order} exceeds the {len(raw)} available counts")
    rhs = series_exp(log_series_from_counts(raw, order))
    return lhs == rhs


@dataclass(frozen=True)
class GrowthReport:
    rho: float
    L: float | None
    poles: tuple[float, ...]

    def to_json(self) -> dict:
        return {
            "rho": "inf" if math.isinf(self.rho) else self.rho,
            "L": self.L,
            "poles": list(self.poles),
        }


def growth_report(zeta: RationalFunction, counts: CountSequence | None = None, k: int | None = None) -> GrowthReport:
    """rho = smallest modulus of a pole of zeta, L = -log rho.

    Real positive poles are enclosed by exact Sturm bisection; the other
    moduli come from numerical roots. With ``k`` the cover bounds
    1/k <= rho <= 1 and L <= log k are asserted.
    """
    den = zeta.den
    if den.degree <= 0:
        if counts is not None and any(counts.counts):
            raise ArithmeticError("zeta has no poles but the counts are nonzero")
        return GrowthReport(rho=math.inf, L=None, poles=())
    roots = complex_roots(den)
    moduli = sorted(float(abs(z)) for z in roots)
    rho = moduli[0]
    bracket = smallest_positive_root(den, Fraction(1, 10**15))
    if bracket is not None:
        exact_real = float((bracket[0] + bracket[1]) / 2)
        if abs(exact_real - rho) <= 1e-6 * max(1.0, rho):
            rho = exact_real
    L = -math.log(rho)
    if k is not None:
        lo, hi = 1 / k, 1.0
        if not (lo - RHO_TOLERANCE <= rho <= hi + RHO_TOLERANCE):
            raise ArithmeticError(f"rho = {rho} outside [1/{k}, 1]")
        if L > math.log(k) + RHO_TOLERANCE:
            raise ArithmeticError(f"L = {L} exceeds log {k}")
    return GrowthReport(rho=rho, L=L, poles=tuple(moduli))


@dataclass(frozen=True)
class ZetaReport:
    counts: CountSequence
    zeta: RationalFunction
    series: TruncatedSeries
    rho: float
    L_growth: float | None
    poles: tuple[float, ...]
    audits: tuple = ()

    def to_json(self) -> dict:
        return {
            "counts": list(self.counts.counts),
            "zeta": self.zeta.to_json(),
            "series": self.series.to_json(),
            "rho": "inf" if math.isinf(self.rho) else self.rho,
            "L": self.L_growth,
            "audits": [a.to_json() for a in self.audits],
        }


def zeta_report(spec: CoverSpectrum, order: int, k: int | None = None) -> ZetaReport:
    counts = counts_via_cover(spec, order)
    zeta = zeta_via_cover(spec)
    series = series_of_rational(zeta, order)
    if series != zeta_series_from_counts(counts, order):
        raise ArithmeticError("determinant-ratio zeta disagrees with the counts")
    g = growth_report(zeta, counts, k)
    return ZetaReport(counts, zeta, series, g.rho, g.L, g.poles)


# -- the audit of the multi-coding sum -------------------------------------------


@dataclass(frozen=True)
class PhiAudit:
    x: Fraction
    p: int
    codings: tuple[tuple[int, ...], ...]
    mu: tuple[int, ...]
    cycles: tuple[tuple[int, ...], ...]
    phi_value: int
    subset_sum: int

    @property
    def s(self) -> int:
        return len(self.cycles)

    def to_json(self) -> dict:
        return {
            "x": str(self.x),
            "p": self.p,
            "codings": [list(c) for c in self.codings],
            "mu": list(self.mu),
            "cycles": [list(c) for c in self.cycles],
            "s": self.s,
            "phi": self.phi_value,
        }


def periodic_codings(cover: MarkovCover, x, p: int, a: TransitionMatrix | None = None) -> list[tuple[int, ...]]:
    """Every infinite admissible coding of a period-p point, as its first-period window.

    The orbit is finite, so codings are infinite paths in the graph on
    (n mod p, rectangle) with edges allowed by A and by rectangle membership.
    Only nodes with an infinite future survive pruning; each surviving path
    is forced to be periodic, and it is reported by its word of length
    p * period of the induced permutation.
    """
    f = cover.circle_map
    a = a if a is not None else transition_matrix(cover)
    x = mod1(x)
    if evaluate_iter(f, x, p) != x:
        raise PreconditionError(f"f^{p}(x) != x")
    orbit_pts = [x]
    for _ in range(p - 1):
        orbit_pts.append(evaluate(f, orbit_pts[-1]))
    rects = [r.region for r in cover.rectangles]
    nodes = {(n, j) for n in range(p) for j, r in enumerate(rects) if orbit_pts[n] in r}

    def succ(node):
        n, j = node
        return [(m, t) for (m, t) in nodes if m == (n + 1) % p and a[j, t]]

    live = set(nodes)
    changed = True
    while changed:
        changed = False
        for v in list(live):
            if not any(w in live for w in succ(v)):
                live.discard(v)
                changed = True
    starts = sorted(j for (n, j) in live if n == 0)
    for v in live:
        nxt = [w for w in succ(v) if w in live]
        if len(nxt) != 1:
            raise ArithmeticError(f"coding of x branches at {v}: successors {nxt}")
    out = []
    for j in starts:
        word, v = [], (0, j)
        while True:
            word.append(v[1])
            v = next(w for w in succ(v) if w in live)
            if v == (0, j) and len(word) % p == 0:
                break
        out.append(tuple(word))
    if len(out) > f.degree:
        raise ArithmeticError(f"{len(out)} codings exceed the degree {f.degree}")
    return out


def phi_audit(cover: MarkovCover, x, p: int, spec: CoverSpectrum | None = None) -> PhiAudit:
    """Evaluate the signed multi-coding sum at a period-p point literally.

    With S_n = {j : f^n(x) in R_j} the sum runs over t = 1..L and over
    cyclic A^(t)-paths of length p whose members lie inside S_0, ..., S_p,
    each contributing (-1)^(t-1) times the sign of the composed permutation
    it carries. The coding permutation mu (where sigma^p sends each coding)
    and its cycles are reported alongside, with the closed form
    1 - (1 - 1)^s for comparison.
    """
    spec = spec if spec is not None else CoverSpectrum.from_cover(cover)
    f = cover.circle_map
    x = mod1(x)
    codings = periodic_codings(cover, x, p, spec.a)
    # sigma^p sends the coding starting with codings[i][0] to the one starting at index p
    pos = {c[0]: i for i, c in enumerate(codings)}
    mu = tuple(pos[c[p % len(c)]] for c in codings)
    cycles, seen = [], set()
    for i in range(len(mu)):
        if i in seen:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = mu[j]
        cycles.append(tuple(cyc))

    orbit_pts = [x]
    for _ in range(p - 1):
        orbit_pts.append(evaluate(f, orbit_pts[-1]))
    rects = [r.region for r in cover.rectangles]
    allowed = [frozenset(j for j, r in enumerate(rects) if pt in r) for pt in orbit_pts]

    total = 0
    for lvl in spec.levels:
        members = lvl.index.members
        inside = [[q for q, m in enumerate(members) if set(m) <= allowed[n]] for n in range(p)]
        b = lvl.b_matrix
        # signed closed walks q_0 -> q_1 -> ... -> q_{p-1} -> q_0 through the allowed members
        level_sum = 0
        for q0 in inside[0]:
            weights = {q0: 1}
            for n in range(1, p + 1):
                targets = inside[n % p] if n < p else [q0]
                nxt = {}
                for q, w in weights.items():
                    for t in targets:
                        if b[q, t]:
                            nxt[t] = nxt.get(t, 0) + w * b[q, t]
                weights = nxt
            level_sum += weights.get(q0, 0)
        total += (-1) ** (lvl.r - 1) * level_sum
    s = len(cycles)
    subset_sum = 1 - (1 - 1) ** s
    return PhiAudit(x, p, tuple(codings), mu, tuple(cycles), total, subset_sum)


def signed_path_sum(lvl: SignedTransition, start: int, end: int, n: int) -> int:
    """Sum of sgn(nu_n) over A^(r)-paths of length n, with nu_n the composed permutation.

    Paths are enumerated explicitly and their permutations composed, so this
    is independent of the matrix power it is compared with.
    """
    size = len(lvl.index)
    total = 0
    ident = tuple(range(lvl.r))
    stack = [(start, ident, 0)]
    while stack:
        q, nu, depth = stack.pop()
        if depth == n:
            if q == end:
                total += _sign(nu)
            continue
        for t in range(size):
            if lvl.a_matrix[q, t]:
                mu = lvl.perms[(q, t)]
                stack.append((t, tuple(mu[i] for i in nu), depth + 1))
    return total


def _sign(perm: Sequence[int]) -> int:
    inversions = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1
