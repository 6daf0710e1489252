"""Exact arithmetic core: rationals, integer matrices, polynomials, series."""

from .matrix import IntMatrix, charpoly_rev, trace_power, trace_powers
from .polynomial import (
    IntPolynomial,
    complex_roots,
    count_real_roots,
    poly_gcd,
    smallest_positive_root,
    squarefree_part,
)
from .ratfunc import RationalFunction, series_of_rational
from .rational import format_rational, parse_rational
from .series import (
    DEFAULT_ORDER,
    TruncatedSeries,
    log_series_from_counts,
    series_exp,
    series_log,
)

__all__ = [
    "DEFAULT_ORDER",
    "IntMatrix",
    "IntPolynomial",
    "RationalFunction",
    "TruncatedSeries",
    "charpoly_rev",
    "complex_roots",
    "count_real_roots",
    "format_rational",
    "log_series_from_counts",
    "parse_rational",
    "poly_gcd",
    "series_exp",
    "series_log",
    "series_of_rational",
    "smallest_positive_root",
    "squarefree_part",
    "trace_power",
    "trace_powers",
]
