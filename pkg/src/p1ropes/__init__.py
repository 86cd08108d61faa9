"""Exact-arithmetic toolkit for multiplicity-3 ropes on the projective line:
classification, certified projective embeddings, smoothability decisions,
bundle degeneration families, and brute-force Hilbert-function verification
of the embedded ideals."""

from .forms import (
    BinaryForm,
    LaurentForm,
    LinearSolution,
    Q,
    RatMatrix,
    gcd_forms,
    graded_basis,
    rehomogenize,
    solve_linear,
)
from .sheaf import (
    CechClass,
    ExtensionFamily,
    NotABundleError,
    TransitionBundle,
    cech_reduce,
    cohom_dims,
    degeneration_family,
)
from .rope import (
    FamilyCocycle,
    RopeClass,
    SmoothabilityReport,
    SmoothCase,
    degeneration_chain,
    invariants,
    lift_class_to_family,
    maroni_criterion_equiv,
    relative_dim_check,
    smoothability_report,
    triple_cover_exists,
)
from .rnc import (
    RncContext,
    TauHom,
    connecting_delta,
    gamma_matrix,
    hom_dims,
    sequence_selftest,
    solve_delta,
)
from .embed import (
    EmbedCase,
    EmbedVerdict,
    SurjectivityCertificate,
    decide,
    embed_rope,
    is_surjective,
    low_n_decision,
    m_bound,
    n0_bound,
    split_witness,
    twisted_cubic_analysis,
)
from .ideal import (
    ChartEmbedding,
    HilbertReport,
    RopeIdealSlice,
    chart_data,
    hilbert_verify,
    ideal_slice,
)

__version__ = "0.1.0"
