"""Finite poset and simplicial-complex topology toolkit.

Segre and Rees products of posets, rank selection, order complexes,
exact reduced homology over Z, Q, and prime fields, Cohen-Macaulay
analysis, affine semigroup Koszul tests, and the permutation statistics
tying them together.
"""

from .posets import (
    Bound,
    ImpurePosetError,
    Poset,
    PosetError,
    PosetMap,
    PurityFailure,
    RankInfo,
    SizeLimitError,
    augment,
    bounds,
    build_poset,
    closed_interval,
    dual,
    find_isomorphism,
    induced_subposet,
    is_isomorphic,
    is_pure,
    mobius,
    open_interval,
    poset_from_data,
    poset_from_json,
    poset_to_data,
    poset_to_json,
    rank_info,
    rank_map,
    require_rank_info,
)
from .complexes import (
    ComplexError,
    SimplicialComplex,
    barycentric_subdivision,
    complex_from_data,
    complex_from_json,
    complex_segre,
    complex_to_data,
    complex_to_json,
    empty_complex,
    f_vector,
    face_poset,
    full_simplex,
    order_complex,
    rank_coloring,
    reduced_euler,
    simplex_boundary,
    simplicial_complex,
    type_select,
    void_complex,
)
from .intmatrix import (
    IntegerMatrix,
    MatrixError,
    SNFDecomposition,
    is_prime,
    rank_mod_p,
    rank_over_rationals,
    smith_normal_form,
)
from .homology import (
    HomologySummary,
    betti,
    boundary_matrices,
    check_chain_complex,
    homology,
    integral_homology,
    summary_to_data,
)
from .cohen_macaulay import (
    CMFailure,
    CMReport,
    cm_preservation_suite,
    cm_report_to_data,
    is_acyclic_over,
    is_cm_complex,
    is_cm_poset,
)
from .constructions import (
    FiberIdeal,
    ReesAsSegreResult,
    WeightedSegreResult,
    boolean,
    boolean_minus_bottom,
    chain,
    fiber_ideal,
    minors,
    product,
    rank_select,
    rees,
    rees_as_segre,
    rees_deranged,
    segre,
    subword,
    support_descents,
    weighted_segre,
    word_descents,
)
from .semigroups import (
    GradingMap,
    HomogeneousSemigroup,
    SegreSemigroupView,
    SemigroupError,
    build_semigroup,
    grading_map,
    koszul_necessary_test,
    lower_interval,
    natural_semigroup,
    open_interval_below,
    punctured_veronese_semigroup,
    rees_semigroup,
    segre_semigroup,
    semigroup_from_data,
    semigroup_from_json,
    semigroup_to_data,
    semigroup_to_json,
)
from .permutations import (
    FlagVector,
    ascent_set,
    derangements,
    descent_set,
    falling_chains_segre_square,
    flag_vector_boolean,
    no_common_ascent_pairs,
)
from .verification import VerificationReport, run_verification

__version__ = "0.1.0"
