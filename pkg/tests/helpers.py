"""Shared strategies and small oracles for the test suite."""

import functools
from fractions import Fraction

from hypothesis import strategies as st

from dynzeta.circleset import mod1
from dynzeta.ruellemap import Branch, CircleMap, PseudoOrbit, evaluate


def affine_map(degree, cuts, weights, offset=Fraction(0)):
    """Piecewise-affine degree-k map with breakpoints ``cuts`` and slope budget ``weights``.

    Piece i has length l_i and lift increment l_i + w_i (k - 1) with the w_i
    normalised to sum 1, so every slope exceeds 1 and the total winding is k.
    """
    pts = [Fraction(0)] + sorted(set(Fraction(c) for c in cuts if 0 < c < 1)) + [Fraction(1)]
    ws = [Fraction(w) for w in weights[: len(pts) - 1]]
    ws += [Fraction(1)] * (len(pts) - 1 - len(ws))
    total = sum(ws)
    branches, level = [], Fraction(offset)
    for (a, b), w in zip(zip(pts, pts[1:]), ws):
        rise = (b - a) + w / total * (degree - 1)
        slope = rise / (b - a)
        branches.append(Branch(a, b, slope, level - slope * a))
        level += rise
    return CircleMap(degree, tuple(branches))


@st.composite
def circle_maps(draw, degrees=(2, 3), max_pieces=3):
    degree = draw(st.sampled_from(degrees))
    n_cuts = draw(st.integers(0, max_pieces - 1))
    cuts = draw(st.lists(st.fractions(min_value=Fraction(1, 20), max_value=Fraction(19, 20), max_denominator=20), min_size=n_cuts, max_size=n_cuts))
    weights = draw(st.lists(st.integers(1, 4), min_size=max_pieces, max_size=max_pieces))
    offset = draw(st.fractions(min_value=0, max_value=1, max_denominator=12))
    return affine_map(degree, cuts, weights, offset)


rationals01 = st.fractions(min_value=0, max_value=1, max_denominator=997).map(lambda q: q - (q // 1))

# a nonlinear degree-2 example: slope 3 on [0, 1/4), slope 5/3 on [1/4, 1)
BENT = CircleMap(2, (Branch(Fraction(0), Fraction(1, 4), Fraction(3), Fraction(0)), Branch(Fraction(1, 4), Fraction(1), Fraction(5, 3), Fraction(1, 3))))
DOUBLING = CircleMap.linear(2)
TRIPLING = CircleMap.linear(3)


def random_pseudo_orbit(f, rng, alpha, length):
    """x_{n+1} = f(x_n) + delta_n with |delta_n| < alpha, all exact."""
    pts = [Fraction(rng.randrange(10**6), 10**6)]
    for _ in range(length - 1):
        delta = alpha * Fraction(rng.randrange(-999, 1000), 1000)
        pts.append(mod1(evaluate(f, pts[-1]) + delta))
    return PseudoOrbit(tuple(pts), alpha, f)


def shadow_parameters(consts):
    """beta < eps/2 <= r and alpha strictly inside the admissible bound."""
    beta = min(consts.r, consts.epsilon) * Fraction(9, 20)
    bound = min(consts.r - beta, (1 - consts.lam) * beta / consts.lam)
    return bound * Fraction(9, 10), beta


# net covers with verified parameters: (map, net, alpha, beta)
NET_CASES = {
    "doubling-net32": (DOUBLING, [Fraction(i, 32) for i in range(32)], Fraction(3, 32), Fraction(7, 64)),
    "tripling-net36": (TRIPLING, [Fraction(i, 36) for i in range(36)], Fraction(7, 80), Fraction(3, 40)),
    "bent-net64": (BENT, [Fraction(i, 64) for i in range(64)], Fraction(1, 20), Fraction(2, 25)),
}


@functools.cache
def net_result(name):
    from dynzeta.markovcover import net_cover

    f, net, alpha, beta = NET_CASES[name]
    return net_cover(f, net, alpha, beta)


@functools.cache
def spectrum(name):
    """Cover spectra shared across test modules, built once per session."""
    from dynzeta.markovcover import equal_subdivision_cover
    from dynzeta.zetacalc import CoverSpectrum

    if name in NET_CASES:
        return CoverSpectrum.from_cover(net_result(name).cover)
    kind, m = name.split("-m")
    f = {"doubling": DOUBLING, "tripling": TRIPLING}[kind]
    return CoverSpectrum.from_cover(equal_subdivision_cover(f, int(m)))
