"""Command-line front end.

Exit codes: 0 success, 1 ``compare`` mismatch, 2 unreadable or malformed
input, 3 a stated precondition does not hold, 4 an internal invariant broke.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from typing import Any

from .circleset import circle_dist
from .exactalg import DEFAULT_ORDER, format_rational, parse_rational, series_of_rational
from .exactalg.polynomial import IntPolynomial
from .markovcover import (
    MarkovCover,
    Rectangle,
    equal_subdivision_cover,
    index_families,
    net_cover,
    signed_matrices,
    transition_matrix,
    validate_cover,
)
from .ruellemap import (
    CircleMap,
    PreconditionError,
    PseudoOrbit,
    degree_and_entropy,
    evaluate,
    periodic_points,
    ruelle_constants,
    shadow,
)
from .shiftspace import (
    TransitionMatrix,
    divisor_example_series,
    growth_stats,
    is_irreducible,
    perron_root,
    periodic_counts,
    sft_zeta,
)
from .zetacalc import CoverSpectrum, counts_via_cover, growth_report, phi_audit, zeta_via_cover_detail

DEFAULT_MAX_PERIOD = 12


class InputError(ValueError):
    """Input could not be read or does not match its schema."""


def _load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _schema(path: str, build):
    data = _load_json(path)
    try:
        return build(data)
    except PreconditionError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        detail = f"missing key {exc}" if isinstance(exc, KeyError) else str(exc)
        raise InputError(f"{path}: {detail}") from exc


def _load_map(args) -> CircleMap:
    if args.map:
        return _schema(args.map, CircleMap.from_json)
    return CircleMap.linear(args.k)


def _load_cover(args) -> MarkovCover:
    if args.cover:
        return _schema(args.cover, MarkovCover.from_json)
    f = _load_map(args)
    if args.net:
        result = net_cover(f, [Fraction(i, args.net) for i in range(args.net)], args.alpha, args.beta, args.depth)
        if not result.is_markov:
            failing = ", ".join(c.name for c in result.report.failures())
            raise PreconditionError(f"net construction did not yield a Markov cover ({failing}); raise --depth or shrink --beta")
        return result.cover
    return equal_subdivision_cover(f, args.subdivision)


def _poly_block(p: IntPolynomial) -> dict:
    return {"coeffs": p.to_json(), "text": p.render(unicode=True)}


# -- subcommands --------------------------------------------------------------


def cmd_sft_zeta(args) -> dict:
    a = _schema(args.matrix, TransitionMatrix.from_json)
    z = sft_zeta(a)
    out = {"num": z.num.to_json(), "den": z.den.to_json(), "text": z.render(unicode=True)}
    out["series"] = series_of_rational(z, args.order).to_json()
    return out


def cmd_sft_counts(args) -> dict:
    a = _schema(args.matrix, TransitionMatrix.from_json)
    return periodic_counts(a, args.max_period).to_json()


def cmd_sft_entropy(args) -> dict:
    a = _schema(args.matrix, TransitionMatrix.from_json)
    counts = periodic_counts(a, args.max_period)
    out: dict = {"irreducible": is_irreducible(a)}
    perron = perron_root(a) if out["irreducible"] else None
    stats = growth_stats(counts, perron)
    out.update(
        {
            "perron_root": perron,
            "entropy": math.log(perron) if perron else None,
            "L_estimate": stats.L,
            "rho_estimate": stats.rho,
            "window": list(stats.window),
        }
    )
    g = growth_report(sft_zeta(a), counts)
    out["rho"] = "inf" if math.isinf(g.rho) else g.rho
    out["L"] = g.L
    return out


def cmd_map_periodic(args) -> dict:
    f = _load_map(args)
    counts, points = [], {}
    for p in range(1, args.max_period + 1):
        pts = periodic_points(f, p)
        counts.append(len(pts))
        if args.points:
            points[str(p)] = [format_rational(x) for x in pts]
    k, h = degree_and_entropy(f)
    out = {"map": f.to_json(), "constants": ruelle_constants(f).to_json(), "degree": k, "entropy": h, "counts": counts}
    if args.points:
        out["points"] = points
    return out


def cmd_map_zeta(args) -> dict:
    cover = _load_cover(args)
    f = cover.circle_map
    spec = CoverSpectrum.from_cover(cover)
    detail = zeta_via_cover_detail(spec)
    counts = counts_via_cover(spec, args.max_period)
    g = growth_report(detail.zeta, counts, f.degree)
    return {
        "zeta": {**detail.zeta.to_json(), "text": detail.zeta.render(unicode=True)},
        "uncancelled": {"num": _poly_block(detail.numerator_product), "den": _poly_block(detail.denominator_product)},
        "L_levels": spec.L,
        "counts": list(counts.counts),
        "series": series_of_rational(detail.zeta, args.order).to_json(),
        "rho": "inf" if math.isinf(g.rho) else g.rho,
        "L": g.L,
    }


def cmd_cover_validate(args) -> tuple[dict, int]:
    cover = _load_cover_unchecked(args)
    report = validate_cover(cover)
    return {"cover": cover.to_json(), "report": report.to_json()}, 0 if report.passed else 3


def _load_cover_unchecked(args) -> MarkovCover:
    """Like _load_cover but returns failing candidates so they can be reported."""
    if args.cover:
        return _schema(args.cover, MarkovCover.from_json)
    f = _load_map(args)
    if args.net:
        return net_cover(f, [Fraction(i, args.net) for i in range(args.net)], args.alpha, args.beta, args.depth).cover
    m = args.subdivision
    return MarkovCover.build(f, [Rectangle.interval(Fraction(i, m), Fraction(i + 1, m)) for i in range(m)])


def cmd_cover_matrices(args) -> dict:
    cover = _load_cover(args)
    a = transition_matrix(cover)
    levels = [signed_matrices(a, fam).to_json() for fam in index_families(cover)]
    return {"A": a.to_json(), "L": len(levels), "levels": levels}


def cmd_shadow(args) -> dict:
    f = _load_map(args)

    def build(data):
        return PseudoOrbit(tuple(parse_rational(p) for p in data["points"]), parse_rational(data["alpha"]))

    po = _schema(args.orbit, build)
    beta = parse_rational(args.beta)
    x = shadow(f, po, beta)
    dists, cur = [], x
    for target in po.points:
        dists.append(format_rational(circle_dist(cur, target)))
        cur = evaluate(f, cur)
    return {"shadow": format_rational(x), "beta": format_rational(beta), "distances": dists}


def cmd_divisor_series(args) -> dict:
    zeta, s = divisor_example_series(args.order)
    s_poly = IntPolynomial(tuple(int(c) for c in s.coeffs))
    return {"zeta_series": zeta.to_json(), "s": s.to_json(), "s_text": s_poly.render(unicode=True)}


def cmd_audit_phi(args) -> dict:
    cover = _load_cover(args)
    spec = CoverSpectrum.from_cover(cover)
    audits = []
    for p in range(1, args.max_period + 1):
        for x in periodic_points(cover.circle_map, p):
            audits.append(phi_audit(cover, x, p, spec).to_json())
    return {"audits": audits, "all_one": all(a["phi"] == 1 for a in audits)}


def cmd_compare(args) -> tuple[dict, int]:
    cover = _load_cover(args)
    spec = CoverSpectrum.from_cover(cover)
    formula = list(counts_via_cover(spec, args.max_period).counts)
    oracle = [len(periodic_points(cover.circle_map, p)) for p in range(1, args.max_period + 1)]
    mismatches = [p for p, (u, v) in enumerate(zip(formula, oracle), start=1) if u != v]
    return {"formula": formula, "oracle": oracle, "mismatches": mismatches, "match": not mismatches}, 1 if mismatches else 0


# -- wiring ----------------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dynzeta", description="Exact zeta functions of subshifts and expanding circle maps.")
    sub = parser.add_subparsers(dest="command", required=True)

    fmt = argparse.ArgumentParser(add_help=False)
    group = fmt.add_mutually_exclusive_group()
    group.add_argument("--json", dest="pretty", action="store_false", help="machine-readable JSON (default)")
    group.add_argument("--pretty", dest="pretty", action="store_true", help="indented text view of the same values")
    fmt.set_defaults(pretty=False)

    order = argparse.ArgumentParser(add_help=False)
    order.add_argument("--order", type=_positive, default=DEFAULT_ORDER)
    period = argparse.ArgumentParser(add_help=False)
    period.add_argument("--max-period", type=_positive, default=DEFAULT_MAX_PERIOD)

    mapsrc = argparse.ArgumentParser(add_help=False)
    src = mapsrc.add_mutually_exclusive_group()
    src.add_argument("--k", type=int, default=2, help="use x -> kx mod 1 (default 2)")
    src.add_argument("--map", help="circle map JSON file")

    coversrc = argparse.ArgumentParser(add_help=False, parents=[mapsrc])
    coversrc.add_argument("--subdivision", type=_positive, default=5, help="equal subdivision into m arcs (default 5)")
    coversrc.add_argument("--cover", help="cover JSON file (includes its map)")
    coversrc.add_argument("--net", type=_positive, help="build the cover from the net {i/N}")
    coversrc.add_argument("--alpha", type=_rational, default=Fraction(3, 32))
    coversrc.add_argument("--beta", type=_rational, default=Fraction(7, 64))
    coversrc.add_argument("--depth", type=_positive, default=12)

    def add(name, func, parents, help_text):
        p = sub.add_parser(name, parents=[fmt, *parents], help=help_text)
        p.set_defaults(func=func)
        return p

    add("sft-zeta", cmd_sft_zeta, [order], "zeta function 1/det(I - tA)").add_argument("matrix")
    add("sft-counts", cmd_sft_counts, [period], "periodic-point counts tr(A^n)").add_argument("matrix")
    add("sft-entropy", cmd_sft_entropy, [period], "Perron root, entropy and growth").add_argument("matrix")
    add("map-periodic", cmd_map_periodic, [mapsrc, period], "exact periodic points of a circle map").add_argument(
        "--points", action="store_true", help="list the points, not just their number"
    )
    add("map-zeta", cmd_map_zeta, [coversrc, order, period], "zeta function through a Markov cover")
    add("cover-validate", cmd_cover_validate, [coversrc], "check the Markov cover properties")
    add("cover-matrices", cmd_cover_matrices, [coversrc], "transition matrix and signed overlap matrices")
    sh = add("shadow", cmd_shadow, [mapsrc], "shadow a finite pseudo-orbit")
    sh.add_argument("orbit", help='JSON {"points": [...], "alpha": "p/q"}')
    sh.add_argument("--beta", required=True, type=str)
    add("divisor-series", cmd_divisor_series, [order], "series of the divisor-count example")
    add("audit-phi", cmd_audit_phi, [coversrc, period], "signed coding sum at every periodic point")
    add("compare", cmd_compare, [coversrc, period], "cover formula against the periodic-point oracle")
    return parser


def _pretty(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for key, v in sorted(value.items()):
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{key}:")
                lines.extend(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(v)}")
        return lines
    if isinstance(value, list):
        lines = []
        for v in value:
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}-")
                lines.extend(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
        return lines
    return [pad + _scalar(value)]


def _flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def render(result, pretty: bool) -> str:
    if pretty:
        return "\n".join(_pretty(result))
    return json.dumps(result, ensure_ascii=False, sort_keys=True, indent=2)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except InputError as exc:
        print(f"dynzeta: input error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"dynzeta: precondition violated: {exc}", file=sys.stderr)
        return 3
    except (ArithmeticError, AssertionError) as exc:
        print(f"dynzeta: internal invariant broken: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"dynzeta: input error: {exc}", file=sys.stderr)
        return 2
    code = 0
    if isinstance(result, tuple):
        result, code = result
    sys.stdout.write(render(result, args.pretty) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
