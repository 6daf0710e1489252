"""Markov covers of the circle and the signed overlap matrices they induce.

Rectangles are finite unions of closed rational arcs, stored as exact
:class:`CircleSet` values. Symbols (rectangle indices) are 0-based.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .circleset import CircleSet, circle_dist, mod1, signed_offset
from .exactalg import IntMatrix, format_rational, parse_rational
from .ruellemap import CircleMap, PreconditionError, RuelleConstants, evaluate, ruelle_constants
from .shiftspace import TransitionMatrix

CODING_BUDGET = 10**6


@dataclass(frozen=True)
class Rectangle:
    """A closed subset of the circle given as a union of closed arcs."""

    region: CircleSet

    @classmethod
    def from_arcs(cls, arcs: Iterable[tuple]) -> "Rectangle":
        """Arcs as (from, to) pairs, traversed counter-clockwise; from == to is the full circle."""
        return cls(CircleSet.union_all(CircleSet.closed_arc(a, b) for a, b in arcs))

    @classmethod
    def interval(cls, a, b) -> "Rectangle":
        return cls.from_arcs([(a, b)])

    @property
    def arcs(self) -> list[tuple[Fraction, Fraction]]:
        """(start, length) of each closed component."""
        return self.region.components()

    def interior(self) -> CircleSet:
        return self.region.interior()

    def diameter(self) -> Fraction:
        return self.region.diameter()

    def to_json(self) -> list[dict]:
        return self.region.to_json()

    @classmethod
    def from_json(cls, data: list[dict]) -> "Rectangle":
        return cls.from_arcs((parse_rational(a["from"]), parse_rational(a["to"])) for a in data)


@dataclass(frozen=True)
class MarkovCover:
    rectangles: tuple[Rectangle, ...]
    circle_map: CircleMap
    epsilon: Fraction
    c: Fraction

    @classmethod
    def build(cls, circle_map: CircleMap, rectangles: Sequence[Rectangle]) -> "MarkovCover":
        consts = ruelle_constants(circle_map)
        return cls(tuple(rectangles), circle_map, consts.epsilon, consts.c)

    @property
    def size(self) -> int:
        return len(self.rectangles)

    @property
    def diameter_bound(self) -> Fraction:
        return min(self.epsilon, self.c / 2)

    def to_json(self) -> dict:
        return {
            "rectangles": [r.to_json() for r in self.rectangles],
            "map": self.circle_map.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict, circle_map: CircleMap | None = None) -> "MarkovCover":
        f = circle_map if circle_map is not None else CircleMap.from_json(data["map"])
        return cls.build(f, [Rectangle.from_json(r) for r in data["rectangles"]])


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    offending: tuple = ()
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "pass": self.passed,
            "offending": [list(o) if isinstance(o, tuple) else o for o in self.offending],
            "detail": self.detail,
        }


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {"valid": self.passed, "checks": [c.to_json() for c in self.checks]}


@functools.lru_cache(maxsize=32)
def validate_cover(cover: MarkovCover) -> ValidationReport:
    """Check every cover property exactly; violations are reported, never raised.

    Covers are immutable, so reports are memoised.
    """
    f = cover.circle_map
    rects = [r.region for r in cover.rectangles]
    interiors = [r.interior() for r in rects]
    n = len(rects)
    checks = []

    covered = CircleSet.union_all(rects)
    checks.append(CheckResult("covers_circle", covered.is_full(), detail="" if covered.is_full() else "uncovered: " + str(covered.complement().to_json())))

    improper = tuple(i for i, r in enumerate(rects) if r.is_empty() or r.interior().closure() != r)
    checks.append(CheckResult("proper", not improper, improper, "rectangles must equal the closure of their interior"))

    overlaps = tuple((i, j) for i, j in itertools.combinations(range(n), 2) if not (interiors[i] & interiors[j]).is_empty())
    checks.append(CheckResult("disjoint_interiors", not overlaps, overlaps))

    bound = cover.diameter_bound
    too_big = tuple(i for i, r in enumerate(rects) if not r.diameter() < bound)
    checks.append(
        CheckResult(
            "diameter",
            not too_big,
            too_big,
            f"need diam(R_i) < min(epsilon, c/2) = {format_rational(bound)}",
        )
    )

    open_images = [s.image(f) for s in interiors]
    closed_images = [r.image(f) for r in rects]
    markov_bad, closed_bad = [], []
    for i in range(n):
        for j in range(n):
            if (open_images[i] & interiors[j]).is_empty():
                continue
            if not interiors[j].issubset(open_images[i]):
                markov_bad.append((i, j))
            if not rects[j].issubset(closed_images[i]):
                closed_bad.append((i, j))
    checks.append(
        CheckResult("markov", not markov_bad, tuple(markov_bad), "f(int R_i) meets int R_j but does not contain it")
    )
    checks.append(CheckResult("markov_closed", not closed_bad, tuple(closed_bad), "f(int R_i) meets int R_j but R_j is not inside f(R_i)"))
    return ValidationReport(tuple(checks))


def require_valid(cover: MarkovCover) -> ValidationReport:
    report = validate_cover(cover)
    if not report.passed:
        names = ", ".join(f"{c.name} {list(c.offending)}" for c in report.failures())
        raise PreconditionError(f"cover is not a valid Markov cover: {names}")
    return report


def equal_subdivision_cover(f: CircleMap, m: int) -> MarkovCover:
    """R_i = [i/m, (i+1)/m] for i = 0..m-1, validated before it is returned."""
    if m < 1:
        raise ValueError("piece count m must be >= 1")
    if m == 1:
        rects = [Rectangle(CircleSet.full())]
    else:
        rects = [Rectangle.interval(Fraction(i, m), Fraction(i + 1, m)) for i in range(m)]
    cover = MarkovCover.build(f, rects)
    if not Fraction(1, m) < cover.diameter_bound:
        raise PreconditionError(
            f"diameter bound violated: 1/{m} is not < min(epsilon, c/2) = {format_rational(cover.diameter_bound)}"
        )
    require_valid(cover)
    return cover


def transition_matrix(cover: MarkovCover) -> TransitionMatrix:
    """A_ij = 1 iff f(int R_i) meets int R_j; the cover must validate."""
    require_valid(cover)
    f = cover.circle_map
    interiors = [r.interior() for r in cover.rectangles]
    images = [s.image(f) for s in interiors]
    return TransitionMatrix(tuple(tuple(int(not (img & s).is_empty()) for s in interiors) for img in images))


# -- overlap families and signed matrices -----------------------------------


@dataclass(frozen=True)
class IndexFamily:
    r: int
    members: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        members = tuple(sorted(set(tuple(sorted(m)) for m in self.members)))
        for m in members:
            if len(m) != self.r or len(set(m)) != self.r:
                raise ValueError(f"member {m} is not an {self.r}-subset")
        object.__setattr__(self, "members", members)

    def __len__(self) -> int:
        return len(self.members)

    def position(self, member: Sequence[int]) -> int:
        return self.members.index(tuple(member))

    def to_json(self) -> dict:
        return {"r": self.r, "members": [list(m) for m in self.members]}


def index_families(cover: MarkovCover) -> list[IndexFamily]:
    """I_1, ..., I_L by exact intersection of the closed rectangles."""
    require_valid(cover)
    rects = [r.region for r in cover.rectangles]
    level = {(i,): rects[i] for i in range(len(rects))}
    out = []
    while level:
        r = len(next(iter(level)))
        out.append(IndexFamily(r, tuple(level)))
        nxt = {}
        for members, inter in level.items():
            for j in range(members[-1] + 1, len(rects)):
                common = inter & rects[j]
                if not common.is_empty():
                    nxt[members + (j,)] = common
        level = nxt
    return out


def index_families_from_overlaps(k: int, overlaps: Iterable[Iterable[int]]) -> list[IndexFamily]:
    """Abstract mode: I_r from a list of index sets declared to intersect.

    Every subset of a declared set also intersects, so the families are the
    downward closure of the declaration, plus all singletons.
    """
    sets: set[tuple[int, ...]] = {(i,) for i in range(k)}
    for s in overlaps:
        s = tuple(sorted(set(s)))
        if any(not 0 <= i < k for i in s):
            raise ValueError(f"overlap {s} uses an index outside 0..{k - 1}")
        for r in range(1, len(s) + 1):
            sets.update(itertools.combinations(s, r))
    top = max(len(s) for s in sets)
    return [IndexFamily(r, tuple(s for s in sets if len(s) == r)) for r in range(1, top + 1)]


def permutation_sign(perm: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def admissible_permutations(a: TransitionMatrix, s: Sequence[int], t: Sequence[int], limit: int = 2) -> list[tuple[int, ...]]:
    """Permutations mu with A[s_i, t_mu(i)] = 1 for all i, at most ``limit`` of them."""
    r = len(s)
    found: list[tuple[int, ...]] = []
    perm: list[int] = []
    used = [False] * r

    def extend(i: int) -> bool:
        if i == r:
            found.append(tuple(perm))
            return len(found) >= limit
        for j in range(r):
            if not used[j] and a[s[i], t[j]]:
                used[j] = True
                perm.append(j)
                stop = extend(i + 1)
                perm.pop()
                used[j] = False
                if stop:
                    return True
        return False

    extend(0)
    return found


@dataclass(frozen=True)
class SignedTransition:
    r: int
    index: IndexFamily
    a_matrix: IntMatrix
    b_matrix: IntMatrix
    # unique admissible permutation for every pair (s, t) with A^(r)_st = 1
    perms: dict = field(default_factory=dict, compare=False, repr=False)

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "index": [list(m) for m in self.index.members],
            "A": [list(row) for row in self.a_matrix.rows],
            "B": [list(row) for row in self.b_matrix.rows],
        }


def signed_matrices(a: TransitionMatrix, fam: IndexFamily) -> SignedTransition:
    """A^(r) and B^(r): a unique admissible permutation gives 1 and its sign."""
    for m in fam.members:
        if any(not 0 <= i < a.k for i in m):
            raise ValueError(f"index family member {m} does not fit a {a.k}-symbol matrix")
    size = len(fam)
    a_rows = [[0] * size for _ in range(size)]
    b_rows = [[0] * size for _ in range(size)]
    perms = {}
    for x, s in enumerate(fam.members):
        for y, t in enumerate(fam.members):
            found = admissible_permutations(a, s, t, limit=2)
            if len(found) == 1:
                a_rows[x][y] = 1
                b_rows[x][y] = permutation_sign(found[0])
                perms[(x, y)] = found[0]
    return SignedTransition(fam.r, fam, IntMatrix(tuple(map(tuple, a_rows))), IntMatrix(tuple(map(tuple, b_rows))), perms)


# -- coding --------------------------------------------------------------------


def _check_admissible(a: TransitionMatrix, word: Sequence[int]) -> None:
    if not word:
        raise ValueError("empty word")
    for i, s in enumerate(word):
        if not 0 <= s < a.k:
            raise ValueError(f"symbol {s} at position {i} is out of range")
    for i, (s, t) in enumerate(zip(word, word[1:])):
        if not a[s, t]:
            raise PreconditionError(f"word is not admissible: A[{s}, {t}] = 0 at position {i}")


def pi_decode(cover: MarkovCover, word: Sequence[int], a: TransitionMatrix | None = None) -> CircleSet:
    """F_n = intersection of f^{-i}(R_{a_i}) for i = 0..n, as an exact closed set."""
    a = a if a is not None else transition_matrix(cover)
    _check_admissible(a, word)
    f = cover.circle_map
    current = cover.rectangles[word[-1]].region
    for s in reversed(word[:-1]):
        current = cover.rectangles[s].region & current.preimage(f)
    if current.is_empty():
        raise ArithmeticError(f"admissible word {tuple(word)} decoded to the empty set")
    return current


def code_point(cover: MarkovCover, x, n: int, a: TransitionMatrix | None = None) -> list[tuple[int, ...]]:
    """Every admissible word a_0..a_n with f^i(x) in R_{a_i}, in lexicographic order."""
    a = a if a is not None else transition_matrix(cover)
    f = cover.circle_map
    rects = [r.region for r in cover.rectangles]
    x = mod1(x)
    orbit_pts = [x]
    for _ in range(n):
        orbit_pts.append(evaluate(f, orbit_pts[-1]))
    hits = [[j for j, r in enumerate(rects) if pt in r] for pt in orbit_pts]
    words: list[tuple[int, ...]] = [(j,) for j in hits[0]]
    for i in range(1, n + 1):
        words = [w + (j,) for w in words for j in hits[i] if a[w[-1], j]]
        if len(words) > CODING_BUDGET:
            raise PreconditionError(f"more than {CODING_BUDGET} codings")
    k = f.degree
    if len(words) > k:
        raise ArithmeticError(f"{len(words)} codings exceed the degree bound {k}")
    return sorted(words)


# -- construction from a net ---------------------------------------------------


@dataclass(frozen=True)
class NetCoverResult:
    cover: MarkovCover
    report: ValidationReport
    net_matrix: TransitionMatrix
    shadow_sets: tuple[CircleSet, ...]
    exact: bool
    depth_used: int

    @property
    def is_markov(self) -> bool:
        return self.report.passed


def net_preconditions(f: CircleMap, net: Sequence[Fraction], alpha, beta, consts: RuelleConstants | None = None) -> Fraction:
    """Check the construction's hypotheses; returns the density gamma of the net."""
    consts = consts or ruelle_constants(f)
    alpha, beta = Fraction(alpha), Fraction(beta)
    pts = sorted(set(mod1(p) for p in net))
    if not pts:
        raise PreconditionError("empty net")
    gaps = [b - a for a, b in zip(pts, pts[1:])] + [pts[0] + 1 - pts[-1]]
    gamma = max(gaps) / 2
    lip = f.max_slope
    if not lip * gamma < alpha / 2:
        raise PreconditionError(
            f"net is not dense enough: need Lip(f) * gamma < alpha/2, got "
            f"{format_rational(lip)} * {format_rational(gamma)} vs {format_rational(alpha / 2)}"
        )
    beta_bound = min(consts.epsilon / 2, consts.c / 4)
    if not 0 < beta < beta_bound:
        raise PreconditionError(f"need beta < min(epsilon/2, c/4) = {format_rational(beta_bound)}: beta = {format_rational(beta)}")
    alpha_bound = min(consts.r - beta, (1 - consts.lam) * beta / consts.lam)
    if not 0 < alpha < alpha_bound:
        raise PreconditionError(
            f"need alpha < min(r - beta, (1 - lambda) beta / lambda) = {format_rational(alpha_bound)}: alpha = {format_rational(alpha)}"
        )
    return gamma


Interval = tuple[Fraction, Fraction]


def _merge(intervals: list[tuple[Fraction, Fraction, object, object]]) -> list[tuple[Fraction, Fraction, object, object]]:
    """Merge closed intervals, keeping the provenance tag of each surviving endpoint."""
    intervals = sorted(intervals, key=lambda iv: (iv[0], iv[1]))
    out = [list(intervals[0])]
    for lo, hi, tlo, thi in intervals[1:]:
        last = out[-1]
        if lo <= last[1]:
            if hi > last[1]:
                last[1], last[3] = hi, thi
        else:
            out.append([lo, hi, tlo, thi])
    return [tuple(iv) for iv in out]


def net_cover(f: CircleMap, net: Sequence, alpha, beta, depth: int = 12) -> NetCoverResult:
    """Candidate Markov cover from the shadows of net pseudo-orbits.

    T_i is the set of points that beta-shadow some net pseudo-orbit starting
    at p_i. In lifted coordinates it is the attractor of
    T_i = union over A_ij of psi_ij(T_j), with psi_ij the inverse branch of f
    sending the ball around p_j to the ball around p_i. The iteration starts
    from the closed beta-balls and runs ``depth`` times; each endpoint then
    follows its provenance chain to a cycle whose affine fixed point is the
    exact endpoint. The snapped sets are accepted only if they satisfy the
    attractor equation exactly, otherwise the depth-N outer approximation is
    used. Rectangles are closures of the cells R(x) cut out by the T_i and
    their complements, and the result carries an exact validation report.
    """
    consts = ruelle_constants(f)
    alpha, beta = Fraction(alpha), Fraction(beta)
    pts = [mod1(p) for p in net]
    if len(set(pts)) != len(pts):
        raise ValueError("net points must be distinct")
    net_preconditions(f, pts, alpha, beta, consts)
    if depth < 1:
        raise ValueError("depth must be >= 1")
    m = len(pts)
    images = [evaluate(f, p) for p in pts]
    adj = tuple(tuple(int(circle_dist(images[i], pts[j]) < alpha) for j in range(m)) for i in range(m))
    # integer shifts so that psi_ij(y) = G(y + shift_ij) on lifted coordinates near p_j
    shifts = {}
    for i in range(m):
        fi = f.lift(pts[i])
        for j in range(m):
            if adj[i][j]:
                shift = fi + signed_offset(pts[j], mod1(fi)) - pts[j]
                assert shift.denominator == 1
                shifts[(i, j)] = shift

    def psi(i: int, j: int, y: Fraction) -> Fraction:
        return f.lift_inverse(y + shifts[(i, j)])

    def step(sets: list[list[Interval]]) -> list[list[tuple]]:
        out = []
        for i in range(m):
            pieces = []
            for j in range(m):
                if adj[i][j]:
                    for q, (lo, hi) in enumerate(sets[j]):
                        pieces.append((psi(i, j, lo), psi(i, j, hi), (j, q, 0), (j, q, 1)))
            out.append(_merge(pieces))
        return out

    def psi_affine(i: int, j: int, y: Fraction) -> tuple[Fraction, Fraction]:
        s, b = f.lift_inverse_affine(y + shifts[(i, j)])
        return s, s * shifts[(i, j)] + b

    sets: list[list[Interval]] = [[(p - beta, p + beta)] for p in pts]
    prev_sets = sets
    tagged = None
    for _ in range(depth):
        tagged = step(sets)
        prev_sets, sets = sets, [[(lo, hi) for lo, hi, _, _ in row] for row in tagged]

    snapped = _snap_endpoints(tagged, prev_sets, sets, psi, psi_affine)
    exact = False
    if snapped is not None:
        again = step(snapped)
        if all([(lo, hi) for lo, hi, _, _ in again[i]] == snapped[i] for i in range(m)):
            sets, exact = snapped, True

    shadow_sets = tuple(CircleSet.union_all(CircleSet.arc(lo, hi - lo) for lo, hi in row) for row in sets)
    rects = _cells(shadow_sets)
    cover = MarkovCover(tuple(rects), f, consts.epsilon, consts.c)
    return NetCoverResult(cover, validate_cover(cover), TransitionMatrix(adj), shadow_sets, exact, depth)


def _snap_endpoints(tagged, prev_sets, sets, psi, psi_affine):
    """Replace each endpoint by the fixed point of its provenance cycle.

    Endpoint (i, q, side) of the depth-N sets is psi_ij of endpoint
    (j, q', side) of the depth-(N-1) sets. When both depths share the same
    interval structure this is a functional graph on endpoints; every cycle
    is solved exactly with the affine pieces active at the current values.
    """
    if [len(r) for r in prev_sets] != [len(r) for r in sets]:
        return None
    parent = {}
    for i, row in enumerate(tagged):
        for q, (_, _, tlo, thi) in enumerate(row):
            parent[(i, q, 0)] = tlo
            parent[(i, q, 1)] = thi
    value = {v: sets[v[0]][v[1]][v[2]] for v in parent}
    solved: dict = {}
    for start in parent:
        chain, seen = [], {}
        v = start
        while v not in solved and v not in seen:
            seen[v] = len(chain)
            chain.append(v)
            v = parent[v]
        if v in seen:
            cycle = chain[seen[v]:]
            slope, icpt = Fraction(1), Fraction(0)
            for u in reversed(cycle):
                su, bu = psi_affine(u[0], parent[u][0], value[parent[u]])
                slope, icpt = su * slope, su * icpt + bu
            if slope == 1:
                return None
            solved[cycle[0]] = icpt / (1 - slope)
            for u in reversed(cycle[1:]):
                solved[u] = psi(u[0], parent[u][0], solved[parent[u]])
            chain = chain[: seen[v]]
        for u in reversed(chain):
            solved[u] = psi(u[0], parent[u][0], solved[parent[u]])
    return [[(solved[(i, q, 0)], solved[(i, q, 1)]) for q in range(len(row))] for i, row in enumerate(tagged)]


def _cells(sets: Sequence[CircleSet]) -> list[Rectangle]:
    """Closures of the regions with a fixed membership pattern in every T_i."""
    grid = sorted(set().union(*(s.breaks for s in sets)))
    if not grid:
        return [Rectangle(CircleSet.full())]
    groups: dict[tuple[bool, ...], list[CircleSet]] = {}
    for i, a in enumerate(grid):
        b = grid[i + 1] if i + 1 < len(grid) else grid[0] + 1
        mid = mod1((a + b) / 2)
        sig = tuple(mid in s for s in sets)
        groups.setdefault(sig, []).append(CircleSet.arc(a, b - a))
    return [Rectangle(CircleSet.union_all(parts)) for _, parts in sorted(groups.items(), key=lambda kv: min(c.breaks[0] for c in kv[1]))]
