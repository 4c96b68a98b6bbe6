"""Exact toolkit for perfect state transfer on unions of Johnson-scheme
distance graphs: eigenvalue machinery, weighted characterization and
construction, unweighted congruence search, and an independent numeric
walk oracle.
"""

__version__ = "0.1.0"

from .errors import CapacityError, NumericFailure, ObstructionError, ParityPatternError
from .exactmath import (
    binom,
    binom_mod_p,
    binom_valuation,
    digit_sum,
    gcd_all,
    is_prime,
    nu2,
    odd_part,
)
from .scheme import (
    AxiomReport,
    CoeffVector,
    EigenTable,
    SchemeParams,
    StructuralMatrices,
    WeightVector,
    adjacency,
    build_structural,
    coeffs_to_weights,
    colex_rank,
    colex_unrank,
    dual_hahn,
    dual_hahn_x,
    eigen_table,
    mat_identity,
    mat_mul,
    scheme_axiom_check,
    spectrum_weighted,
    subsets_colex,
    weights_to_coeffs,
)
from .transfer import (
    ParityReport,
    PstCertificate,
    canonical_example,
    construct_weights,
    integral_spectrum_check,
    minimal_pst_time,
    no_pst_witness,
    pst_check,
    validate_parity,
)
from .unweighted import (
    ResidueConstraint,
    UnionSelector,
    check_union,
    enumerate_pi2,
    pi2_family,
    search_all,
    solve_congruence,
    transfer_exponents,
    union_spectrum,
)
from .oracle import WalkReport, fidelity_curve, walk_fidelity

__all__ = [
    "__version__",
    "CapacityError", "NumericFailure", "ObstructionError", "ParityPatternError",
    "binom", "binom_mod_p", "binom_valuation", "digit_sum", "gcd_all",
    "is_prime", "nu2", "odd_part",
    "AxiomReport", "CoeffVector", "EigenTable", "SchemeParams",
    "StructuralMatrices", "WeightVector", "adjacency", "build_structural",
    "coeffs_to_weights", "colex_rank", "colex_unrank", "dual_hahn",
    "dual_hahn_x", "eigen_table", "mat_identity", "mat_mul",
    "scheme_axiom_check", "spectrum_weighted", "subsets_colex",
    "weights_to_coeffs",
    "ParityReport", "PstCertificate", "canonical_example", "construct_weights",
    "integral_spectrum_check", "minimal_pst_time", "no_pst_witness",
    "pst_check", "validate_parity",
    "ResidueConstraint", "UnionSelector", "check_union", "enumerate_pi2",
    "pi2_family", "search_all", "solve_congruence", "transfer_exponents",
    "union_spectrum",
    "WalkReport", "fidelity_curve", "walk_fidelity",
]
