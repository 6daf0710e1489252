import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dynzeta.exactalg import RationalFunction, charpoly_rev, series_of_rational
from dynzeta.shiftspace import (
    CountSequence,
    EnumerationBudgetExceeded,
    TransitionMatrix,
    count_paths,
    divisor_example_series,
    divisor_sum,
    enumerate_periodic_words,
    expansive_bound_check,
    growth_stats,
    is_irreducible,
    perron_root,
    periodic_counts,
    sft_zeta,
    zeta_series_from_trace_counts,
)

FIB = TransitionMatrix.from_rows([[1, 1], [1, 0]])

zero_one = st.integers(1, 4).flatmap(
    lambda k: st.lists(st.lists(st.integers(0, 1), min_size=k, max_size=k), min_size=k, max_size=k)
)


def euler_product(order):
    """Coefficients of prod_{n <= order} (1 - t^n), truncated."""
    coeffs = [1] + [0] * order
    for n in range(1, order + 1):
        for i in range(order, n - 1, -1):
            coeffs[i] -= coeffs[i - n]
    return coeffs


def words_between(a, p, q, n):
    """Admissible words of length n+1 from p to q, enumerated."""
    words = [(p,)]
    for _ in range(n):
        words = [w + (j,) for w in words for j in range(a.k) if a[w[-1], j]]
    return sum(1 for w in words if w[-1] == q)


class TestCounting:
    @pytest.mark.parametrize(
        "rows, p, q, n, expected",
        [([[1, 1], [1, 0]], 0, 0, 2, 2), ([[1] * 3] * 3, 0, 0, 3, 9), ([[0, 1], [1, 1]], 1, 0, 1, 1)],
    )
    def test_count_paths(self, rows, p, q, n, expected):
        a = TransitionMatrix.from_rows(rows)
        assert count_paths(a, p, q, n) == expected == words_between(a, p, q, n)

    def test_count_paths_bad_symbol(self):
        with pytest.raises(IndexError):
            count_paths(FIB, 0, 2, 1)

    def test_fibonacci_counts(self):
        assert periodic_counts(FIB, 4).counts == (1, 3, 4, 7)

    def test_zero_matrix(self):
        assert periodic_counts(TransitionMatrix.from_rows([[0, 0], [0, 0]]), 5).counts == (0,) * 5
        assert enumerate_periodic_words(TransitionMatrix.from_rows([[0]]), 4) == []

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_full_shift(self, k):
        assert periodic_counts(TransitionMatrix.full_shift(k), 6).counts == tuple(k**n for n in range(1, 7))

    def test_enumerate_examples(self):
        assert enumerate_periodic_words(FIB, 2) == [(0, 0), (0, 1), (1, 0)]
        assert enumerate_periodic_words(TransitionMatrix.from_rows([[1, 0], [0, 1]]), 3) == [(0, 0, 0), (1, 1, 1)]

    def test_enumeration_budget(self):
        with pytest.raises(EnumerationBudgetExceeded):
            enumerate_periodic_words(TransitionMatrix.full_shift(10), 8)

    @given(zero_one, st.integers(1, 8))
    @settings(max_examples=60, deadline=None)
    def test_counts_match_enumeration(self, rows, n):
        a = TransitionMatrix.from_rows(rows)
        assert periodic_counts(a, n)[n] == len(enumerate_periodic_words(a, n))


class TestZeta:
    def test_fibonacci(self):
        z = sft_zeta(FIB)
        assert z == RationalFunction.from_coeffs([1], [1, -1, -1])
        assert z.render(unicode=True) == "1/(1 − t − t²)"

    def test_zero(self):
        assert sft_zeta(TransitionMatrix.from_rows([[0]])) == RationalFunction.from_coeffs([1])

    def test_full_two_shift(self):
        assert sft_zeta(TransitionMatrix.full_shift(2)) == RationalFunction.from_coeffs([1], [1, -2])

    @given(st.integers(1, 5).flatmap(lambda k: st.lists(st.lists(st.integers(0, 1), min_size=k, max_size=k), min_size=k, max_size=k)))
    @settings(max_examples=40, deadline=None)
    def test_determinant_equals_exp_of_traces(self, rows):
        a = TransitionMatrix.from_rows(rows)
        assert series_of_rational(sft_zeta(a), 16) == zeta_series_from_trace_counts(a, 16)


class TestIrreducibility:
    @pytest.mark.parametrize(
        "rows, expected",
        [([[1, 1], [1, 0]], True), ([[1, 0], [0, 1]], False), ([[1, 1], [0, 1]], False), ([[0, 1], [1, 0]], True)],
    )
    def test_examples(self, rows, expected):
        assert is_irreducible(TransitionMatrix.from_rows(rows)) is expected

    @given(zero_one)
    def test_matches_power_criterion(self, rows):
        a = TransitionMatrix.from_rows(rows)
        m = np.array(rows, dtype=np.int64)
        reach = sum(np.linalg.matrix_power(m, n) for n in range(1, a.k + 1))
        assert is_irreducible(a) == bool((reach > 0).all())


class TestGrowth:
    def test_fibonacci_perron(self):
        lam = perron_root(FIB)
        assert abs(lam - (1 + math.sqrt(5)) / 2) < 1e-12

    @pytest.mark.parametrize("k", [1, 2, 3, 5])
    def test_full_shift_perron(self, k):
        assert abs(perron_root(TransitionMatrix.full_shift(k)) - k) < 1e-12

    def test_reducible_rejected(self):
        with pytest.raises(ValueError):
            perron_root(TransitionMatrix.from_rows([[1, 1], [0, 1]]))

    @given(zero_one)
    @settings(max_examples=60, deadline=None)
    def test_perron_dominates(self, rows):
        a = TransitionMatrix.from_rows(rows)
        if not is_irreducible(a):
            return
        lam = perron_root(a)
        eig = np.linalg.eigvals(np.array(rows, dtype=float))
        assert lam >= 1 - 1e-9
        assert max(abs(eig)) <= lam + 1e-9
        assert abs(max(abs(eig)) - lam) < 1e-9

    def test_constant_counts(self):
        g = growth_stats(CountSequence((1,) * 10))
        assert g.L == 0 and g.rho == 1

    def test_zero_counts(self):
        g = growth_stats(CountSequence((0,) * 6))
        assert g.L is None and g.rho is None

    def test_fibonacci_growth_estimate(self):
        g = growth_stats(periodic_counts(FIB, 40), perron_root(FIB))
        assert abs(g.L - math.log(g.perron_root)) < 1e-2
        assert abs(g.rho - math.exp(-g.L)) < 1e-15


class TestDivisorExample:
    @pytest.mark.parametrize("n, expected", [(1, 1), (6, 12), (12, 28), (7, 8)])
    def test_divisor_sum(self, n, expected):
        assert divisor_sum(n) == expected == sum(d for d in range(1, n + 1) if n % d == 0)

    def test_order_seven(self):
        _, s = divisor_example_series(7)
        assert s.coeffs == (1, -1, -1, 0, 0, 1, 0, 1)

    def test_order_fifteen_signs(self):
        # the pentagonal pattern puts -1 on t^12 and also on t^15
        _, s = divisor_example_series(15)
        assert s[12] == -1 and s[15] == -1

    def test_matches_euler_product(self):
        _, s = divisor_example_series(30)
        assert [int(c) for c in s.coeffs] == euler_product(30)
        nonzero = {n: int(c) for n, c in enumerate(s.coeffs) if c}
        assert nonzero == {0: 1, 1: -1, 2: -1, 5: 1, 7: 1, 12: -1, 15: -1, 22: 1, 26: 1}

    def test_zeta_coefficients_are_counts(self):
        zeta, _ = divisor_example_series(10)
        # log-derivative: t zeta'/zeta = sum N_n t^n
        from dynzeta.exactalg import series_log

        log = series_log(zeta)
        assert [log[n] * n for n in range(1, 11)] == [divisor_sum(n) + 1 for n in range(1, 11)]


class TestExpansiveBound:
    @pytest.mark.parametrize(
        "counts, r, expected",
        [((1, 3, 4, 7), 2, True), ((0, 0, 0), 1, True), ((3,), 2, False)],
    )
    def test_examples(self, counts, r, expected):
        assert expansive_bound_check(CountSequence(counts), r) is expected


def test_json_shapes():
    assert FIB.to_json() == {"k": 2, "rows": [[1, 1], [1, 0]]}
    assert TransitionMatrix.from_json({"rows": [[1]]}).k == 1
    with pytest.raises(ValueError):
        TransitionMatrix.from_json({"k": 3, "rows": [[1]]})
    with pytest.raises(ValueError):
        TransitionMatrix.from_rows([[2]])
    assert periodic_counts(FIB, 3).to_json() == {"counts": [1, 3, 4]}
    assert charpoly_rev(FIB.as_int_matrix()).to_json() == [1, -1, -1]
