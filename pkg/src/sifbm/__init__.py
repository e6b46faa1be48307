"""sifbm: the set-indexed fractional Brownian motion toolbox.

Covariance kernel and Gram matrices over indexing collections
(rectangles, circle arcs, totally ordered chains), spectra and
positive-semidefiniteness verdicts, elementary flows with measure-clock
projections, inclusion-exclusion increments, seeded Gaussian sampling,
and executable checks of the process's provable properties.
"""

from .backend import BACKEND_NAME, COMPILED_AVAILABLE
from .covariance import (
    GramMatrix,
    HurstParam,
    as_hurst,
    fbm_gram,
    gram,
    phi,
    pow_2h,
    variance_of_difference,
)
from .errors import (
    InvalidH,
    InvalidSet,
    KindMismatch,
    MissingPoint,
    NoConvergence,
    NotDecreasing,
    NotIncreasing,
    NotPsd,
    OutOfDomain,
    OutOfRange,
    PreconditionViolated,
    SifbmError,
    TooManySubtracted,
    UnsupportedAction,
    UnsupportedCollection,
)
from .flows import (
    ElementaryFlow,
    flow_through,
    project_points,
    projected_gram,
    theta,
    theta_inverse,
)
from .increments import (
    IncrementExpr,
    MAX_SUBTRACTED,
    increment_covariance,
    increment_expand,
    premeasure_psi,
)
from .indexing import (
    CHAIN_MAPS,
    EMPTY,
    ChainMap,
    ChainPoint,
    Empty,
    IndexingCollection,
    OrientedArc,
    Rectangle,
    ShortestArc,
    chain,
    circle_oriented,
    circle_shortest,
    rectangles,
)
from .sampling import (
    GENERATOR_NAME,
    SampleField,
    empirical_gram,
    sample_field,
    sample_increments,
)
from .spectra import (
    CholeskyFactor,
    CriticalHReport,
    PsdVerdict,
    cholesky_psd,
    critical_h_scan,
    eigenvalues_symmetric,
    frobenius_norm,
    is_psd,
)
from .validation import (
    COUNTEREXAMPLE_PAIR,
    CheckReport,
    characterization_crosscheck,
    check_outer_continuity,
    check_projection_is_fbm,
    check_self_similarity,
    check_stationarity,
    circle_triple_compare,
    outer_continuity_chain,
    pfbm_covariance,
    random_chain,
    random_flow_instance,
    random_hurst,
    random_points,
    random_self_similarity_instance,
    random_stationarity_instance,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND_NAME",
    "COMPILED_AVAILABLE",
    "CHAIN_MAPS",
    "COUNTEREXAMPLE_PAIR",
    "ChainMap",
    "ChainPoint",
    "CheckReport",
    "CholeskyFactor",
    "CriticalHReport",
    "ElementaryFlow",
    "EMPTY",
    "Empty",
    "GENERATOR_NAME",
    "GramMatrix",
    "HurstParam",
    "IncrementExpr",
    "IndexingCollection",
    "InvalidH",
    "InvalidSet",
    "KindMismatch",
    "MAX_SUBTRACTED",
    "MissingPoint",
    "NoConvergence",
    "NotDecreasing",
    "NotIncreasing",
    "NotPsd",
    "OrientedArc",
    "OutOfDomain",
    "OutOfRange",
    "PreconditionViolated",
    "PsdVerdict",
    "Rectangle",
    "SampleField",
    "ShortestArc",
    "SifbmError",
    "TooManySubtracted",
    "UnsupportedAction",
    "UnsupportedCollection",
    "as_hurst",
    "chain",
    "characterization_crosscheck",
    "check_outer_continuity",
    "check_projection_is_fbm",
    "check_self_similarity",
    "check_stationarity",
    "cholesky_psd",
    "circle_oriented",
    "circle_shortest",
    "circle_triple_compare",
    "critical_h_scan",
    "eigenvalues_symmetric",
    "empirical_gram",
    "fbm_gram",
    "flow_through",
    "frobenius_norm",
    "gram",
    "increment_covariance",
    "increment_expand",
    "is_psd",
    "outer_continuity_chain",
    "pfbm_covariance",
    "phi",
    "pow_2h",
    "premeasure_psi",
    "project_points",
    "projected_gram",
    "random_chain",
    "random_flow_instance",
    "random_hurst",
    "random_points",
    "random_self_similarity_instance",
    "random_stationarity_instance",
    "rectangles",
    "sample_field",
    "sample_increments",
    "theta",
    "theta_inverse",
    "variance_of_difference",
]
