"""Jacobian rings, local cohomology and linkage for projective hypersurfaces."""

from pathlib import Path

from .groebner import GroebnerBasis, normal_form, reduced_groebner_basis
from .ideals import (
    GradedDims,
    HilbertSeries,
    Ideal,
    colon,
    degree_of,
    hilbert_function,
    hilbert_series,
    ideal_equal,
    ideal_sum,
    intersection,
    krull_dim,
    saturate,
)
from .linkage import (
    LinkageData,
    QuasiCI,
    ReportOptions,
    check_self_duality,
    degree_additivity_check,
    extract_regular_sequence,
    full_report,
    gherardelli_injectivity_check,
    jacobian_ideal,
    linked_ideal,
    local_cohomology_h0,
    socle_degree,
    verify_linkage_involution,
    verify_main_sequence,
)
from .polyring import (
    Polynomial,
    RingContext,
    compare_monomials,
    parse_polynomial,
    partial_derivative,
)
from .report import CheckResult, VerificationReport

CORPUS_DIR = Path(__file__).parent / "corpus"

__version__ = "0.1.0"

__all__ = [
    "CheckResult",
    "GradedDims",
    "GroebnerBasis",
    "HilbertSeries",
    "Ideal",
    "LinkageData",
    "Polynomial",
    "QuasiCI",
    "ReportOptions",
    "RingContext",
    "VerificationReport",
    "check_self_duality",
    "colon",
    "compare_monomials",
    "degree_additivity_check",
    "degree_of",
    "extract_regular_sequence",
    "full_report",
    "gherardelli_injectivity_check",
    "hilbert_function",
    "hilbert_series",
    "ideal_equal",
    "ideal_sum",
    "intersection",
    "jacobian_ideal",
    "krull_dim",
    "linked_ideal",
    "local_cohomology_h0",
    "normal_form",
    "parse_polynomial",
    "partial_derivative",
    "reduced_groebner_basis",
    "saturate",
    "socle_degree",
    "verify_linkage_involution",
    "verify_main_sequence",
    "CORPUS_DIR",
]
