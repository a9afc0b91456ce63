"""Sectional curvature of SO(n), Stiefel and Grassmann manifolds.

Closed-form curvature under the canonical and Euclidean metrics, the matrix
inequalities behind the global bounds, explicit extremal sections and
reproducible numerical experiments.
"""
from .curvature import (
    CurvatureReport,
    curvature_of,
    k_grassmann,
    k_so,
    k_stiefel_canonical,
    k_stiefel_euclidean,
    sectional_curvature,
)
from .errors import (
    DegenerateSectionError,
    DimensionError,
    DomainError,
    ManifoldError,
    NormalizationError,
    NumericalError,
    StructureError,
    UsageError,
    VerificationError,
)
from .experiments import (
    ExperimentRecord,
    probe_conjecture,
    run_exp1,
    run_exp2,
    run_exp3_mix,
    run_exp3_surface,
)
from .extremizers import (
    ExtremizerKind,
    build_extremizer,
    closed_geodesic_st42,
    geodesic_length,
    injectivity_lower_bound,
    verify_attainment,
)
from .inequalities import (
    InequalityReport,
    canonical_bound_fn,
    euclidean_bound_fns,
    skew_commutator_bound,
    submult_bound,
    trace_quad_extrema,
    trace_term_max,
    verify_bound_fn_max,
    wu_chen_refined,
)
from .output import emit
from .tangents import (
    GrassmannTangent,
    Manifold,
    MetricKind,
    OrthonormalPair,
    SkewTangent,
    StiefelTangent,
    metric_inner,
    orthonormalize_pair,
    random_tangent_pair,
)

__version__ = "0.1.0"
