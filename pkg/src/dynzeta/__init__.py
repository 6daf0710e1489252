"""Exact dynamical zeta functions for subshifts of finite type and expanding circle maps."""

from .circleset import CircleSet, circle_dist, mod1
from .markovcover import (
    IndexFamily,
    MarkovCover,
    Rectangle,
    SignedTransition,
    ValidationReport,
    code_point,
    equal_subdivision_cover,
    index_families,
    index_families_from_overlaps,
    net_cover,
    pi_decode,
    signed_matrices,
    transition_matrix,
    validate_cover,
)
from .ruellemap import (
    Branch,
    CircleMap,
    PreconditionError,
    PseudoOrbit,
    RuelleConstants,
    contractive_branch,
    degree_and_entropy,
    evaluate,
    evaluate_iter,
    inverse_branches,
    periodic_points,
    ruelle_constants,
    shadow,
)
from .shiftspace import (
    CountSequence,
    TransitionMatrix,
    count_paths,
    divisor_example_series,
    growth_stats,
    perron_root,
    periodic_counts,
    sft_zeta,
)
from .zetacalc import (
    CoverSpectrum,
    consistency_check,
    counts_via_cover,
    growth_report,
    phi_audit,
    zeta_series_from_counts,
    zeta_via_cover,
)

__all__ = [name for name in dir() if not name.startswith("_")]
