from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dynzeta.circleset import CircleSet, circle_dist, mod1, signed_offset
from dynzeta.ruellemap import evaluate, inverse_branches

from helpers import BENT, DOUBLING, TRIPLING, circle_maps

F = Fraction

endpoint = st.fractions(min_value=0, max_value=1, max_denominator=16)


@st.composite
def circle_sets(draw):
    parts = []
    for _ in range(draw(st.integers(0, 3))):
        kind = draw(st.sampled_from(["closed", "open", "point"]))
        a = draw(endpoint)
        length = draw(st.fractions(min_value=0, max_value=1, max_denominator=16))
        if kind == "point":
            parts.append(CircleSet.point(a))
        else:
            parts.append(CircleSet.arc(a, length, closed=kind == "closed"))
    return CircleSet.union_all(parts)


def probes(*sets):
    """Every breakpoint, every gap midpoint and a few extra points."""
    grid = sorted(set().union(*(s.breaks for s in sets)) | {F(0), F(1, 3)})
    out = set(grid)
    for i, a in enumerate(grid):
        b = grid[i + 1] if i + 1 < len(grid) else grid[0] + 1
        out.add(mod1((a + b) / 2))
        out.add(mod1(a + (b - a) / 7))
    return sorted(out)


class TestBasics:
    @pytest.mark.parametrize(
        "x, y, expected", [(F(0), F(1, 2), F(1, 2)), (F(1, 10), F(9, 10), F(1, 5)), (F(3, 4), F(1, 4), F(1, 2))]
    )
    def test_circle_dist(self, x, y, expected):
        assert circle_dist(x, y) == expected

    def test_signed_offset_range(self):
        assert signed_offset(F(1, 10), F(9, 10)) == F(1, 5)
        assert signed_offset(F(9, 10), F(1, 10)) == F(-1, 5)
        assert signed_offset(F(1, 2), F(0)) == F(1, 2)

    def test_arc_membership(self):
        s = CircleSet.closed_arc(F(4, 5), F(1, 10))
        assert F(4, 5) in s and F(0) in s and F(1, 10) in s
        assert F(1, 2) not in s
        assert CircleSet.open_arc(F(4, 5), F(1, 10)).contains(F(4, 5)) is False

    def test_full_and_empty(self):
        assert CircleSet.closed_arc(F(1, 3), F(1, 3)).is_full()
        assert CircleSet.arc(0, 0, closed=False).is_empty()
        assert CircleSet.open_arc(F(1, 3), F(1, 3)).complement() == CircleSet.point(F(1, 3))

    def test_json(self):
        assert CircleSet.closed_arc(F(4, 5), 1).to_json() == [{"from": "4/5", "to": "1"}]
        assert CircleSet.closed_arc(F(9, 10), F(1, 10)).to_json() == [{"from": "9/10", "to": "1/10"}]


class TestAlgebra:
    @given(circle_sets(), circle_sets())
    @settings(max_examples=150)
    def test_boolean_ops_pointwise(self, a, b):
        for x in probes(a, b):
            assert ((a | b).contains(x)) == (a.contains(x) or b.contains(x))
            assert ((a & b).contains(x)) == (a.contains(x) and b.contains(x))
            assert ((a - b).contains(x)) == (a.contains(x) and not b.contains(x))
            assert a.complement().contains(x) != a.contains(x)

    @given(circle_sets(), circle_sets())
    def test_canonical_form(self, a, b):
        assert (a | b) == (b | a)
        assert (a & b) | (a - b) == a
        assert a.complement().complement() == a

    @given(circle_sets())
    def test_interior_closure(self, a):
        assert a.interior().issubset(a)
        assert a.issubset(a.closure())
        assert a.closure().closure() == a.closure()
        assert a.interior().interior() == a.interior()
        assert a.closure().complement() == a.complement().interior()

    def test_components_and_measure(self):
        s = CircleSet.closed_arc(F(9, 10), F(1, 10)) | CircleSet.point(F(1, 2)) | CircleSet.closed_arc(F(1, 4), F(1, 3))
        assert s.components() == [(F(1, 4), F(1, 12)), (F(1, 2), F(0)), (F(9, 10), F(1, 5))]
        assert s.measure() == F(1, 12) + F(1, 5)
        assert s.isolated_points() == [F(1, 2)]

    @pytest.mark.parametrize(
        "s, expected",
        [
            (CircleSet.closed_arc(0, F(1, 5)), F(1, 5)),
            (CircleSet.closed_arc(0, F(3, 5)), F(1, 2)),
            (CircleSet.closed_arc(0, F(1, 10)) | CircleSet.closed_arc(F(1, 5), F(3, 10)), F(3, 10)),
            (CircleSet.closed_arc(F(9, 10), F(1, 10)), F(1, 5)),
            (CircleSet.point(F(1, 3)), F(0)),
        ],
    )
    def test_diameter(self, s, expected):
        assert s.diameter() == expected

    @given(circle_sets())
    @settings(max_examples=60)
    def test_diameter_by_sampling(self, s):
        c = s.closure()
        pts = [x for x in probes(c) if x in c] + list(c.breaks)
        if not pts:
            return
        sampled = max(circle_dist(x, y) for x in pts for y in pts)
        assert sampled <= s.diameter()
        assert s.diameter() <= F(1, 2)

    @given(circle_sets(), endpoint)
    def test_translate(self, s, shift):
        moved = s.translate(shift)
        for x in probes(s):
            assert moved.contains(x + shift) == s.contains(x)


class TestDynamics:
    @pytest.mark.parametrize("f", [DOUBLING, TRIPLING, BENT], ids=["doubling", "tripling", "bent"])
    @given(s=circle_sets())
    @settings(max_examples=40, deadline=None)
    def test_image_and_preimage_pointwise(self, f, s):
        img, pre = s.image(f), s.preimage(f)
        for y in probes(img, s):
            assert img.contains(y) == any(s.contains(a) for a in inverse_branches(f, y))
        for x in probes(pre, s):
            assert pre.contains(x) == s.contains(evaluate(f, x))

    @given(circle_maps(), circle_sets())
    @settings(max_examples=40, deadline=None)
    def test_preimage_random_maps(self, f, s):
        pre = s.preimage(f)
        for x in probes(pre, s):
            assert pre.contains(x) == s.contains(evaluate(f, x))

    def test_doubling_arc_image(self):
        assert CircleSet.closed_arc(0, F(1, 5)).image(DOUBLING) == CircleSet.closed_arc(0, F(2, 5))
        assert CircleSet.closed_arc(0, F(3, 5)).image(DOUBLING).is_full()
