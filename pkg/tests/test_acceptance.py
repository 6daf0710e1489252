"""The ten acceptance criteria, one test each.

A one-line PASS/FAIL verdict per criterion is printed at the end of the run
(see conftest.py). Runtime limits are asserted where a criterion states one.
"""

import math
import random
import time
from fractions import Fraction

from dynzeta.circleset import circle_dist
from dynzeta.exactalg import IntMatrix, RationalFunction, series_of_rational
from dynzeta.markovcover import equal_subdivision_cover, index_families, transition_matrix
from dynzeta.ruellemap import CircleMap, evaluate, periodic_points, ruelle_constants, shadow
from dynzeta.shiftspace import (
    CountSequence,
    TransitionMatrix,
    divisor_example_series,
    expansive_bound_check,
    periodic_counts,
    perron_root,
    sft_zeta,
    zeta_series_from_trace_counts,
)
from dynzeta.zetacalc import (
    CoverSpectrum,
    consistency_check,
    counts_via_cover,
    growth_report,
    phi_audit,
    signed_path_sum,
    zeta_series_from_counts,
    zeta_via_cover,
)

from helpers import BENT, DOUBLING, TRIPLING, net_result, random_pseudo_orbit, shadow_parameters, spectrum

F = Fraction
FIB = TransitionMatrix.from_rows([[1, 1], [1, 0]])


def linear_zeta(k):
    return RationalFunction.from_coeffs([1, -1], [1, -k])


def least_period_points(f, p_max):
    seen, out = set(), []
    for p in range(1, p_max + 1):
        for x in periodic_points(f, p):
            if x not in seen:
                seen.add(x)
                out.append((x, p))
    return out


def test_criterion_01_fibonacci_sft():
    start = time.perf_counter()
    z = sft_zeta(FIB)
    assert z == RationalFunction.from_coeffs([1], [1, -1, -1])
    fib = [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233]
    series = series_of_rational(z, 12)
    assert list(series.coeffs) == fib
    assert zeta_series_from_trace_counts(FIB, 12) == series
    assert time.perf_counter() - start < 1


def test_criterion_02_linear_circle_maps():
    start = time.perf_counter()
    for k, p_max in ((2, 10), (3, 7)):
        f = CircleMap.linear(k)
        for p in range(1, p_max + 1):
            assert len(periodic_points(f, p)) == k**p - 1
        counts = CountSequence(tuple(k**n - 1 for n in range(1, 17)))
        assert zeta_series_from_counts(counts, 16) == series_of_rational(linear_zeta(k), 16)
    assert time.perf_counter() - start < 10


def test_criterion_03_cover_pipeline():
    start = time.perf_counter()
    for f, m, p_max in ((DOUBLING, 5, 12), (TRIPLING, 7, 8)):
        k = f.degree
        cover = equal_subdivision_cover(f, m)
        a = transition_matrix(cover)
        for i, row in enumerate(a.rows):
            assert {j for j in range(m) if row[j]} == {(k * i + d) % m for d in range(k)}
        fams = index_families(cover)
        assert len(fams) == 2 and len(fams[1]) == m
        spec = CoverSpectrum.from_cover(cover)
        assert spec.L == 2
        oracle = [len(periodic_points(f, p)) for p in range(1, p_max + 1)]
        assert list(counts_via_cover(spec, p_max).counts) == oracle
        assert zeta_via_cover(spec) == linear_zeta(k)
    assert time.perf_counter() - start < 30


def test_criterion_04_determinant_ratio_identity():
    names = ["doubling-m5", "doubling-m6", "tripling-m7", "tripling-m8", "doubling-net32", "tripling-net36", "bent-net64"]
    assert all(net_result(n).is_markov for n in names if "net" in n)
    spectra = [spectrum(n) for n in names]
    spectra += [CoverSpectrum.from_sft(FIB), CoverSpectrum.from_sft(TransitionMatrix.full_shift(3))]
    for spec in spectra:
        assert consistency_check(spec, 16)
    # oracle counts for the net-derived spectra as well
    for name, f in (("doubling-net32", DOUBLING), ("bent-net64", BENT)):
        oracle = CountSequence(tuple(len(periodic_points(f, p)) for p in range(1, 13)))
        assert consistency_check(spectrum(name), 12, oracle)


def test_criterion_05_phi_audit():
    for f, m in ((DOUBLING, 5), (TRIPLING, 7)):
        cover = equal_subdivision_cover(f, m)
        spec = CoverSpectrum.from_cover(cover)
        checked = set()
        for x, p in least_period_points(f, 6):
            assert phi_audit(cover, x, p, spec).phi_value == 1, (f.degree, x, p)
            checked.add(x)
        if m == 5:
            assert {F(0), F(1, 5), F(2, 5), F(4, 5), F(3, 5)} <= checked
            assert len(phi_audit(cover, 0, 1, spec).codings) == 2
            assert len(phi_audit(cover, F(1, 5), 4, spec).codings) == 2


def test_criterion_06_signed_path_sums():
    lvl = spectrum("doubling-m5").levels[1]
    b = lvl.b_matrix
    power = IntMatrix.identity(b.dim)
    for n in range(1, 9):
        power = power @ b
        for q in range(b.dim):
            assert signed_path_sum(lvl, q, q, n) == power[q, q]


def test_criterion_07_shadowing():
    start = time.perf_counter()
    rng = random.Random(2024)
    for f in (DOUBLING, TRIPLING, BENT):
        consts = ruelle_constants(f)
        alpha, beta = shadow_parameters(consts)
        assert beta < consts.epsilon / 2
        for _ in range(100):
            po = random_pseudo_orbit(f, rng, alpha, rng.randint(1, 50))
            x = shadow(f, po, beta, consts)
            y = x
            for target in po.points:
                assert circle_dist(y, target) < beta
                y = evaluate(f, y)
            assert shadow(f, po, beta, consts) == x
    assert time.perf_counter() - start < 10


def test_criterion_08_divisor_example():
    _, s = divisor_example_series(30)
    assert all(c in (-1, 0, 1) for c in s.coeffs)
    nonzero = {n: int(c) for n, c in enumerate(s.coeffs) if c}
    assert nonzero == {0: 1, 1: -1, 2: -1, 5: 1, 7: 1, 12: -1, 15: -1, 22: 1, 26: 1}
    product = [1] + [0] * 30
    for n in range(1, 31):
        for i in range(30, n - 1, -1):
            product[i] -= product[i - n]
    assert [int(c) for c in s.coeffs] == product


def test_criterion_09_growth():
    lam = perron_root(FIB)
    assert abs(lam - (1 + math.sqrt(5)) / 2) < 1e-12
    g = growth_report(sft_zeta(FIB))
    assert abs(g.L - math.log(lam)) < 1e-12
    for name, k in (("doubling-m5", 2), ("tripling-m7", 3), ("doubling-net32", 2), ("tripling-net36", 3), ("bent-net64", 2)):
        g = growth_report(zeta_via_cover(spectrum(name)), k=k)
        assert 1 / k - 1e-9 <= g.rho <= 1
        assert abs(g.rho - 1 / k) < 1e-9


def test_criterion_10_expansive_bound():
    systems = [(periodic_counts(FIB, 12), 2), (periodic_counts(TransitionMatrix.full_shift(3), 12), 3)]
    for name in ("doubling-m5", "doubling-m6", "tripling-m7", "tripling-m8", "doubling-net32", "tripling-net36", "bent-net64"):
        spec = spectrum(name)
        systems.append((counts_via_cover(spec, 12), spec.a.k))
    for counts, r in systems:
        assert expansive_bound_check(counts, r)
        assert all(n <= r**p for p, n in enumerate(counts.counts, start=1))
