"""Generalized dominance orders on non-negative arrays.

Dominance by prefix sums, constructive step certificates (transfers and
increases), Lorenz curves with the Gini index, and a CLI for timeline data.
"""

from .core import (
    DEFAULT_EPS,
    DEFAULT_TOLERANCE,
    EXACT,
    Array,
    DominanceOutcome,
    EmptyArray,
    Increase,
    IndexOutOfBounds,
    LengthMismatch,
    MajorizeError,
    NegativeComponent,
    NonPositiveAmount,
    PrefixSums,
    SortDesc,
    SortStepNotEii,
    Step,
    Tolerance,
    Transfer,
    TransferExceedsSource,
    apply_eii,
    as_tolerance,
    componentwise_leq,
    dominates_or_equal,
    generalized_compare,
    make_array,
    prefix_sums,
    sort_asc,
    sort_desc,
)
from .decompose import (
    Certificate,
    CertificateMode,
    CheckFailure,
    FailureReason,
    MalformedCertificate,
    NotDominated,
    SumsNotEqual,
    TargetNotDecreasing,
    VerificationReport,
    decompose_decreasing,
    decompose_general,
    decompose_transfers,
    random_dominated_pair,
    replay,
    verify_certificate,
)
from .lorenz import (
    LorenzCurve,
    ZeroTotal,
    classical_majorizes,
    convex_inequality_holds,
    default_convex_family,
    gini,
    lorenz_points,
)

__version__ = "0.1.0"
