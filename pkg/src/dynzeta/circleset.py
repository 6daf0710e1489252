"""Exact subsets of the circle R/Z built from finitely many points and arcs.

A set is stored as a cyclic cell decomposition: sorted breakpoints
b_0 < ... < b_{n-1} in [0, 1), a membership bit for every breakpoint and a
membership bit for every open gap (b_i, b_{i+1}) (the last gap wraps
through 0). With no breakpoints the set is either empty or the whole
circle. Boolean operations, interior and closure are then bitwise, and
every answer is exact for rational data.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Protocol, Sequence

HALF = Fraction(1, 2)


def mod1(x) -> Fraction:
    x = Fraction(x)
    return x - math.floor(x)


def circle_dist(x, y) -> Fraction:
    """d(x, y) = min(|x - y|, 1 - |x - y|) on R/Z."""
    u = mod1(Fraction(x) - Fraction(y))
    return min(u, 1 - u)


def signed_offset(y, x) -> Fraction:
    """Representative of y - x mod 1 in (-1/2, 1/2]."""
    u = mod1(Fraction(y) - Fraction(x))
    return u - 1 if u > HALF else u


class LiftedMap(Protocol):
    """What CircleSet needs from a degree-k circle map: a monotone lift and its inverse."""

    degree: int

    def lift(self, x: Fraction) -> Fraction: ...

    def lift_inverse(self, y: Fraction) -> Fraction: ...


@dataclass(frozen=True)
class CircleSet:
    breaks: tuple[Fraction, ...]
    points: tuple[bool, ...]
    gaps: tuple[bool, ...]

    # -- constructors -------------------------------------------------------

    @classmethod
    def empty(cls) -> "CircleSet":
        return cls((), (), (False,))

    @classmethod
    def full(cls) -> "CircleSet":
        return cls((), (), (True,))

    @classmethod
    def point(cls, x) -> "CircleSet":
        return cls((mod1(x),), (True,), (False,))

    @classmethod
    def arc(cls, start, length, closed: bool = True) -> "CircleSet":
        """Arc from ``start`` counter-clockwise of the given length.

        ``closed=False`` gives the open arc. Lengths >= 1 wrap onto the
        whole circle, except an open arc of length exactly 1, which misses
        its own start point.
        """
        start, length = mod1(start), Fraction(length)
        if length < 0:
            raise ValueError("negative arc length")
        if length == 0:
            return cls.point(start) if closed else cls.empty()
        if length > 1 or (length == 1 and closed):
            return cls.full()
        if length == 1:
            return cls((start,), (False,), (True,))
        end = mod1(start + length)
        if start < end:
            return cls._normalized((start, end), (closed, closed), (True, False))
        return cls._normalized((end, start), (closed, closed), (False, True))

    @classmethod
    def closed_arc(cls, start, end) -> "CircleSet":
        """[start, end] going counter-clockwise; ``start == end`` mod 1 is the full circle."""
        length = mod1(Fraction(end) - Fraction(start))
        return cls.arc(start, length if length else 1, closed=True)

    @classmethod
    def open_arc(cls, start, end) -> "CircleSet":
        length = mod1(Fraction(end) - Fraction(start))
        return cls.arc(start, length if length else 1, closed=False)

    @classmethod
    def union_all(cls, sets: Iterable["CircleSet"]) -> "CircleSet":
        sets = list(sets)
        if not sets:
            return cls.empty()
        return cls._combine(sets, any)

    @classmethod
    def intersection_all(cls, sets: Iterable["CircleSet"]) -> "CircleSet":
        sets = list(sets)
        if not sets:
            return cls.full()
        return cls._combine(sets, all)

    @classmethod
    def _normalized(cls, breaks, points, gaps) -> "CircleSet":
        breaks, points, gaps = list(breaks), list(points), list(gaps)
        changed = True
        while changed and breaks:
            changed = False
            for i in range(len(breaks)):
                if points[i] == gaps[i - 1] == gaps[i]:
                    del breaks[i]
                    del points[i]
                    # gaps i-1 and i merge; they carry the same bit
                    if len(gaps) > 1:
                        del gaps[i]
                    changed = True
                    break
        if not breaks:
            return cls((), (), (gaps[0],))
        return cls(tuple(breaks), tuple(points), tuple(gaps))

    @classmethod
    def _combine(cls, sets: Sequence["CircleSet"], op: Callable[[Iterable[bool]], bool]) -> "CircleSet":
        grid = sorted(set().union(*(s.breaks for s in sets)))
        if not grid:
            return cls((), (), (op(s.gaps[0] for s in sets),))
        samples = _gap_samples(grid)
        points = tuple(op(s.contains(b) for s in sets) for b in grid)
        gaps = tuple(op(s.contains(m) for s in sets) for m in samples)
        return cls._normalized(grid, points, gaps)

    # -- queries ------------------------------------------------------------

    def contains(self, x) -> bool:
        if not self.breaks:
            return self.gaps[0]
        x = mod1(x)
        i = bisect.bisect_left(self.breaks, x)
        if i < len(self.breaks) and self.breaks[i] == x:
            return self.points[i]
        # x lies in gap i-1 (gap -1 is the wrapping gap)
        return self.gaps[i - 1]

    __contains__ = contains

    def is_empty(self) -> bool:
        return not any(self.points) and not any(self.gaps)

    def is_full(self) -> bool:
        return not self.breaks and self.gaps[0]

    def __bool__(self) -> bool:
        return not self.is_empty()

    def __or__(self, other: "CircleSet") -> "CircleSet":
        return CircleSet._combine([self, other], any)

    def __and__(self, other: "CircleSet") -> "CircleSet":
        return CircleSet._combine([self, other], all)

    def complement(self) -> "CircleSet":
        return CircleSet(self.breaks, tuple(not p for p in self.points), tuple(not g for g in self.gaps))

    def __sub__(self, other: "CircleSet") -> "CircleSet":
        return self & other.complement()

    def issubset(self, other: "CircleSet") -> bool:
        return (self - other).is_empty()

    def interior(self) -> "CircleSet":
        if not self.breaks:
            return self
        n = len(self.breaks)
        pts = tuple(self.points[i] and self.gaps[i - 1] and self.gaps[i] for i in range(n))
        return CircleSet._normalized(self.breaks, pts, self.gaps)

    def closure(self) -> "CircleSet":
        if not self.breaks:
            return self
        n = len(self.breaks)
        pts = tuple(self.points[i] or self.gaps[i - 1] or self.gaps[i] for i in range(n))
        return CircleSet._normalized(self.breaks, pts, self.gaps)

    def boundary(self) -> "CircleSet":
        return self.closure() - self.interior()

    def gap_arcs(self) -> list[tuple[Fraction, Fraction]]:
        """(start, length) for every open gap cell in the set."""
        if not self.breaks:
            return [(Fraction(0), Fraction(1))] if self.gaps[0] else []
        out = []
        n = len(self.breaks)
        for i in range(n):
            if self.gaps[i]:
                a = self.breaks[i]
                b = self.breaks[(i + 1) % n] + (1 if i == n - 1 else 0)
                out.append((a, b - a))
        return out

    def isolated_points(self) -> list[Fraction]:
        return [b for i, b in enumerate(self.breaks) if self.points[i] and not self.gaps[i - 1] and not self.gaps[i]]

    def components(self) -> list[tuple[Fraction, Fraction]]:
        """Closed components of the closure as (start, length); isolated points have length 0."""
        c = self.closure()
        if c.is_full():
            return [(Fraction(0), Fraction(1))]
        if not c.breaks:
            return []
        n = len(c.breaks)
        # walk from the first breakpoint that starts a component (gap before it is out)
        out = []
        for i in range(n):
            if not c.points[i] or c.gaps[i - 1]:
                continue
            length = Fraction(0)
            j = i
            while c.gaps[j]:
                nxt = (j + 1) % n
                length += mod1(c.breaks[nxt] - c.breaks[j]) or 1
                j = nxt
            out.append((c.breaks[i], length))
        return out

    def measure(self) -> Fraction:
        return sum((length for _, length in self.gap_arcs()), Fraction(0))

    def translate(self, shift) -> "CircleSet":
        if not self.breaks:
            return self
        shift = Fraction(shift)
        moved = sorted(((mod1(b + shift), p, g) for b, p, g in zip(self.breaks, self.points, self.gaps)))
        # gap i follows breakpoint i, so the rotation keeps each gap with its left breakpoint
        return CircleSet._normalized([m[0] for m in moved], [m[1] for m in moved], [m[2] for m in moved])

    def diameter(self) -> Fraction:
        """sup of circle distance over the closure."""
        c = self.closure()
        if c.is_empty():
            return Fraction(0)
        if c.is_full() or not (c & c.translate(HALF)).is_empty():
            return HALF
        pts = list(c.breaks)
        return max((circle_dist(x, y) for x in pts for y in pts), default=Fraction(0))

    # -- dynamics -----------------------------------------------------------

    def image(self, f: LiftedMap) -> "CircleSet":
        """f(S), cell by cell: points go to points, open gaps to open arcs."""
        if self.is_empty():
            return self
        if self.is_full():
            return CircleSet.full()
        parts = [CircleSet.point(f.lift(b)) for b, p in zip(self.breaks, self.points) if p]
        for start, length in self.gap_arcs():
            a, b = f.lift(start), f.lift(start + length)
            parts.append(CircleSet.arc(a, b - a, closed=False))
        return CircleSet.union_all(parts)

    def preimage(self, f: LiftedMap) -> "CircleSet":
        """f^{-1}(S): each cell has k preimage cells, via the inverse lift."""
        if self.is_empty() or self.is_full():
            return self
        k = f.degree
        parts = []
        for b, p in zip(self.breaks, self.points):
            if p:
                parts.extend(CircleSet.point(f.lift_inverse(b + j)) for j in range(k))
        for start, length in self.gap_arcs():
            for j in range(k):
                a = f.lift_inverse(start + j)
                b = f.lift_inverse(start + length + j)
                parts.append(CircleSet.arc(a, b - a, closed=False))
        return CircleSet.union_all(parts)

    def to_json(self) -> list[dict]:
        from .exactalg import format_rational

        out = []
        for start, length in self.components():
            end = start + length
            out.append({"from": format_rational(start), "to": format_rational(end if end <= 1 else end - 1)})
        return out


def _gap_samples(grid: Sequence[Fraction]) -> list[Fraction]:
    n = len(grid)
    out = []
    for i in range(n):
        a = grid[i]
        b = grid[i + 1] if i + 1 < n else grid[0] + 1
        out.append(mod1((a + b) / 2))
    return out
