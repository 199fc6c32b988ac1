"""Chopped ideals of point configurations.

The toolkit computes Hilbert functions of ideals generated by a single
graded piece of a point ideal, checks the closed-form prediction for those
Hilbert functions against exact linear algebra over large prime fields,
searches for monomial witnesses with the same behavior, and runs the
floating-point counterpart: Waring decomposition of symmetric forms
through catalecticant kernels.
"""

from .formulas import (
    CaseParams,
    GapPrediction,
    RangeError,
    ci_hf,
    ci_socle,
    ci_table,
    expected_chopped_hf,
    froberg,
    gap_upper_bound,
    generic_hf,
    generic_table,
    interesting_range,
    lex_lower_bound_table,
    liaison_delta,
    predicted_gap,
    r_extremes_plane,
)
from .grading import (
    CapacityError,
    HilbertTable,
    Exponent,
    first_difference,
    hilbert_regularity,
    hs,
    mono_index,
    mono_mul,
    monomials,
    product_index_map,
    ring_table,
)
from .modlinalg import ModMatrix, PrimeField
from .pointideals import (
    ChoppedProfile,
    GenericityError,
    GradedBasis,
    PointConfig,
    chopped_hf,
    chopped_profile,
    evaluation_matrix,
    h_vector,
    ideal_component,
    macaulay_matrix,
    observed_gap,
    sample_points,
)
from .verify import (
    Certificate,
    GridReport,
    MonomialIdeal,
    derive_seed,
    missing_sextic_demo,
    monomial_chopped_hf,
    monomial_hf,
    replay_certificate,
    search_monomial_ideals,
    verify_case,
    verify_grid,
)
from .version import __version__
from .waring import (
    AmbiguousRankError,
    DecompositionResult,
    SymmetricForm,
    UnsupportedRankError,
    WaringError,
    apolarity_check,
    catalecticant,
    decompose,
    form_from_dict,
    form_from_points,
    form_to_dict,
    random_unit_points,
    recovery_error,
    result_to_dict,
)

__all__ = [
    "AmbiguousRankError",
    "CapacityError",
    "CaseParams",
    "Certificate",
    "ChoppedProfile",
    "DecompositionResult",
    "Exponent",
    "GapPrediction",
    "GenericityError",
    "GradedBasis",
    "GridReport",
    "HilbertTable",
    "ModMatrix",
    "MonomialIdeal",
    "PointConfig",
    "PrimeField",
    "RangeError",
    "SymmetricForm",
    "UnsupportedRankError",
    "WaringError",
    "__version__",
    "apolarity_check",
    "catalecticant",
    "chopped_hf",
    "chopped_profile",
    "ci_hf",
    "ci_socle",
    "ci_table",
    "decompose",
    "derive_seed",
    "evaluation_matrix",
    "expected_chopped_hf",
    "first_difference",
    "form_from_dict",
    "form_from_points",
    "form_to_dict",
    "froberg",
    "gap_upper_bound",
    "generic_hf",
    "generic_table",
    "h_vector",
    "hilbert_regularity",
    "hs",
    "ideal_component",
    "interesting_range",
    "lex_lower_bound_table",
    "liaison_delta",
    "macaulay_matrix",
    "missing_sextic_demo",
    "mono_index",
    "mono_mul",
    "monomial_chopped_hf",
    "monomial_hf",
    "monomials",
    "observed_gap",
    "predicted_gap",
    "product_index_map",
    "r_extremes_plane",
    "random_unit_points",
    "recovery_error",
    "replay_certificate",
    "result_to_dict",
    "ring_table",
    "sample_points",
    "search_monomial_ideals",
    "verify_case",
    "verify_grid",
]
