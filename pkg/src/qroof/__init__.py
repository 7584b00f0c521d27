"""Closed-form qubit coherence measures, a convex-roof oracle that certifies
them, and feasibility deciders for incoherent state transformations."""

from .errors import (
    BadOrderingError,
    MuRangeError,
    NonConvexMeasureError,
    NormalizationError,
    NotIsometryError,
    NotPositiveError,
    QRoofError,
    TraceRangeError,
    WeightRangeError,
)
from .measures import (
    CMAX,
    CONCURRENCE,
    FORMATION,
    GEOMETRIC,
    RANK,
    MeasureSpec,
    closed_form,
    cmu,
    coherence_rank,
    convexity_probe,
    curve_sample,
    eval_pure,
    get_measure,
)
from .roof import (
    RoofConfig,
    RoofResult,
    VerifyReport,
    ensemble_from_isometry,
    minimal_pure_split,
    roof_minimize,
    two_state_witness,
    verify_closed_form,
)
from .states import (
    DirectSumState,
    EigenDecomposition,
    Ensemble,
    PureQubit,
    QubitState,
    direct_sum,
    eigendecompose,
    l1_coherence,
    label_swap,
    lower_population,
    mix,
    phase_normalize,
    validate_density,
)
from .transforms import (
    FeasibilityVerdict,
    c_mu_direct_sum,
    conversion_monotones,
    critical_mu_values,
    direct_sum_transform_verdict,
    max_conversion_probability,
    pure_transform_feasible,
    qubit_transform_feasible,
    qubit_transform_verdict,
)

__version__ = "0.1.0"

__all__ = [
    "BadOrderingError",
    "CMAX",
    "CONCURRENCE",
    "DirectSumState",
    "EigenDecomposition",
    "Ensemble",
    "FORMATION",
    "FeasibilityVerdict",
    "GEOMETRIC",
    "MeasureSpec",
    "MuRangeError",
    "NonConvexMeasureError",
    "NormalizationError",
    "NotIsometryError",
    "NotPositiveError",
    "PureQubit",
    "QRoofError",
    "QubitState",
    "RANK",
    "RoofConfig",
    "RoofResult",
    "TraceRangeError",
    "VerifyReport",
    "WeightRangeError",
    "c_mu_direct_sum",
    "closed_form",
    "cmu",
    "coherence_rank",
    "conversion_monotones",
    "convexity_probe",
    "critical_mu_values",
    "curve_sample",
    "direct_sum",
    "direct_sum_transform_verdict",
    "eigendecompose",
    "ensemble_from_isometry",
    "eval_pure",
    "get_measure",
    "l1_coherence",
    "label_swap",
    "lower_population",
    "max_conversion_probability",
    "minimal_pure_split",
    "mix",
    "phase_normalize",
    "pure_transform_feasible",
    "qubit_transform_feasible",
    "qubit_transform_verdict",
    "roof_minimize",
    "two_state_witness",
    "validate_density",
    "verify_closed_form",
]
