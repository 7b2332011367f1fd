"""Exact homology and K-theory invariants for ample groupoid models.

The package computes graded homology and operator K-theory for several
classes of ample groupoid models (finite groupoids by explicit tables,
shifts of finite type, AF diagrams, Cantor minimal Z-systems, and products)
and compares the periodicized ranks, reporting on instances of Matui's HK
conjecture in its rational form.  All arithmetic is exact integer
arithmetic.
"""

from .colimits import (
    ColimitInvariants,
    InductiveSystem,
    colimit_invariants,
    direct_sum_systems,
    map_on_colimit_rank,
)
from .errors import (
    BoundaryMismatch,
    CommutationFailure,
    DimensionMismatch,
    ModelInvalid,
    NotAComplex,
    NotFinitelyGenerated,
    NotPrincipal,
    ParseError,
    SchemaError,
    ShapeMismatch,
    SimplicityNotCertified,
    SizeBoundExceeded,
    TruncationUnsound,
)
from .exact_linalg import (
    FgAbelianGroup,
    IntMatrix,
    SnfResult,
    chain_homology,
    cokernel,
    determinant,
    invariant_factors,
    kernel_basis,
    kernel_rank,
    matrix_rank,
    smith_normal_form,
)
from .hkcheck import (
    HKReport,
    Precondition,
    SpectralDegenerationReport,
    free_graded_commutative_dims,
    hk_check,
    periodicize,
    periodicize_groups,
    report_from_json,
    report_to_json,
    report_to_json_text,
    report_to_text,
    smale_check,
    spectral_degeneration_ranks,
)
from .homology import (
    GradedGroup,
    boundary_matrix,
    homology_af,
    homology_cantor_z,
    homology_finite,
    homology_of_model,
    homology_product,
    homology_sft,
)
from .ktheory import (
    KPair,
    k_af,
    k_cantor_z,
    k_finite_principal,
    k_product,
    k_sft,
    ktheory_of_model,
)
from .models import (
    BratteliModel,
    CantorZModel,
    FiniteGroupoid,
    GroupoidModel,
    IsotropyReport,
    ProductModel,
    SftModel,
    cyclic_group_groupoid,
    disjoint_union_groupoids,
    isotropy_report,
    nerve,
    orbits,
    pair_groupoid,
    trivial_groupoid,
    validate_model,
)
from .modelio import parse_model, parse_model_file, parse_span
from .spans import (
    FiniteSpan,
    boundary_from_face_spans,
    compose_spans,
    disjoint_union_spans,
    face_span,
    identity_span,
    spans_isomorphic,
    transfer_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "BoundaryMismatch",
    "BratteliModel",
    "CantorZModel",
    "ColimitInvariants",
    "CommutationFailure",
    "DimensionMismatch",
    "FgAbelianGroup",
    "FiniteGroupoid",
    "FiniteSpan",
    "GradedGroup",
    "GroupoidModel",
    "HKReport",
    "InductiveSystem",
    "IntMatrix",
    "IsotropyReport",
    "KPair",
    "ModelInvalid",
    "NotAComplex",
    "NotFinitelyGenerated",
    "NotPrincipal",
    "ParseError",
    "Precondition",
    "ProductModel",
    "SchemaError",
    "SftModel",
    "ShapeMismatch",
    "SimplicityNotCertified",
    "SizeBoundExceeded",
    "SnfResult",
    "SpectralDegenerationReport",
    "TruncationUnsound",
    "boundary_from_face_spans",
    "boundary_matrix",
    "chain_homology",
    "cokernel",
    "colimit_invariants",
    "compose_spans",
    "cyclic_group_groupoid",
    "determinant",
    "direct_sum_systems",
    "disjoint_union_groupoids",
    "disjoint_union_spans",
    "face_span",
    "free_graded_commutative_dims",
    "hk_check",
    "homology_af",
    "homology_cantor_z",
    "homology_finite",
    "homology_of_model",
    "homology_product",
    "homology_sft",
    "identity_span",
    "invariant_factors",
    "isotropy_report",
    "k_af",
    "k_cantor_z",
    "k_finite_principal",
    "k_product",
    "k_sft",
    "kernel_basis",
    "kernel_rank",
    "ktheory_of_model",
    "map_on_colimit_rank",
    "matrix_rank",
    "nerve",
    "orbits",
    "pair_groupoid",
    "parse_model",
    "parse_model_file",
    "parse_span",
    "periodicize",
    "periodicize_groups",
    "report_from_json",
    "report_to_json",
    "report_to_json_text",
    "report_to_text",
    "smale_check",
    "smith_normal_form",
    "spans_isomorphic",
    "spectral_degeneration_ranks",
    "transfer_matrix",
    "trivial_groupoid",
    "validate_model",
]
