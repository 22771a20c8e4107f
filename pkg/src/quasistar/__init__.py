"""Threshold-graph spectral extremal toolkit.

Constructs the quasi-star and related threshold families, computes the
spectral radius of alpha*D + (1-alpha)*A with certified residuals, applies
radius-increasing edge rewirings, and verifies extremal characterizations by
exhaustive search at desk scale.
"""

from .graphs import (
    DOMINATING,
    ISOLATED,
    LabeledGraph,
    NotThresholdError,
    SplitParams,
    ThresholdGraph,
    ferrers_matrix,
    from_creation_sequence,
    from_degree_sequence,
    graph_join,
    graph_union,
    is_threshold,
    l_graph,
    quasi_star,
    split_params,
    threshold_from_labeled,
    tilde_s,
    to_labeled,
)
from .search import (
    ExtremalAudit,
    FamilySpec,
    VerificationReport,
    argmax_rho,
    audit,
    enumerate_all,
    enumerate_threshold,
    predicted_maximizers,
    threshold_dominance_report,
    verify_all_graphs_2n2,
    verify_clique_band,
    verify_sparse_band,
    verify_threshold_dominance,
)
from .spectra import (
    NonConvergenceError,
    QuotientMatrix,
    Spectrum,
    alpha_matrix,
    as_alpha,
    char_poly,
    largest_real_root,
    perron_order_check,
    q_upper_bound,
    quotient_matrix,
    signless_laplacian_radius,
    spectral_radius,
    threshold_spectrum,
)
from .transforms import (
    InvalidTransformError,
    MonotonicityCertificate,
    TransformSpec,
    apply_transform,
    candidate_specs,
    certify,
    eq12_residuals,
    validate,
)

__version__ = "0.1.0"
