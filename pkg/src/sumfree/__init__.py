"""Exact tooling for k-sum-free sets.

Predicates and certificates over finite integer sets, dilation-based
extraction with a proven size guarantee, exact maximum-subset solvers,
multiplicative grids with dilation defects, residue-level periodic
analysis, and finitely supported rational measures.
"""

from .core import (
    IntSet,
    Violation,
    difference_witness,
    find_violation,
    format_set_text,
    is_k_sum_free,
    is_strongly_k_sum_free,
    k_difference_set,
    parse_set_text,
    read_set_file,
    write_set_file,
)
from .dilation import (
    ExtractionResult,
    OpenInterval,
    erdos_interval,
    extract_dilate_exhaustive,
    extract_dilate_folner,
    extract_dilate_measure,
    extract_dilate_sampled,
    interval_is_k_sum_free,
)
from .errors import FalsificationError, InvalidParameterError, ResourceLimitError
from .folner import (
    FolnerGrid,
    contains,
    defect,
    defect_closed_form,
    first_primes,
    generate,
    set_dilation_defect,
)
from .measures import (
    NuSchedule,
    RationalMeasure,
    build_mu,
    build_nu,
    contraction_index,
    evaluate,
    mix,
    parse_measure,
    pushforward_scale,
    serialize_measure,
    uniform_measure,
)
from .periodic import (
    ApNotFound,
    DensityDrop,
    DensityDropInstance,
    Falsified,
    PeriodicContainment,
    ResidueSet,
    StepOutcome,
    check_translate_inequality,
    density,
    difference_kernel,
    find_ap,
    fls_step,
    geometric_schedule,
    is_residue_k_sum_free,
    min_ap_length,
    parse_instance,
    periodic_hull,
    serialize_instance,
    upper_density_on_multiples_periodic,
    verify_density_drop,
)
from .solver import (
    ForbiddenHypergraph,
    MaxFractionResult,
    SolveResult,
    build_hypergraph,
    max_fraction,
    max_k_sum_free,
)

__version__ = "0.1.0"

__all__ = [
    "ApNotFound",
    "DensityDrop",
    "DensityDropInstance",
    "ExtractionResult",
    "Falsified",
    "FalsificationError",
    "FolnerGrid",
    "ForbiddenHypergraph",
    "IntSet",
    "InvalidParameterError",
    "MaxFractionResult",
    "NuSchedule",
    "OpenInterval",
    "PeriodicContainment",
    "RationalMeasure",
    "ResidueSet",
    "ResourceLimitError",
    "SolveResult",
    "StepOutcome",
    "Violation",
    "build_hypergraph",
    "build_mu",
    "build_nu",
    "check_translate_inequality",
    "contains",
    "contraction_index",
    "defect",
    "defect_closed_form",
    "density",
    "difference_kernel",
    "difference_witness",
    "erdos_interval",
    "evaluate",
    "extract_dilate_exhaustive",
    "extract_dilate_folner",
    "extract_dilate_measure",
    "extract_dilate_sampled",
    "find_ap",
    "find_violation",
    "first_primes",
    "fls_step",
    "format_set_text",
    "generate",
    "geometric_schedule",
    "interval_is_k_sum_free",
    "is_k_sum_free",
    "is_residue_k_sum_free",
    "is_strongly_k_sum_free",
    "k_difference_set",
    "max_fraction",
    "max_k_sum_free",
    "min_ap_length",
    "mix",
    "parse_instance",
    "parse_measure",
    "parse_set_text",
    "periodic_hull",
    "pushforward_scale",
    "read_set_file",
    "serialize_instance",
    "serialize_measure",
    "set_dilation_defect",
    "uniform_measure",
    "upper_density_on_multiples_periodic",
    "verify_density_drop",
    "write_set_file",
]
