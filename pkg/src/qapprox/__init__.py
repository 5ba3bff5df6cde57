"""qapprox: exact rational approximants from Hankel kernels, a growth
measurement harness, and approximant-sequence exponent tools."""

from .exact import (
    ConstructionError,
    DomainError,
    InputError,
    Interval,
    PoleError,
    Poly,
    TruncSeries,
    den_of,
    format_rational,
    parse_rational,
    reduce_rational,
)
from .pade import (
    HankelSystem,
    PadeApproximant,
    build_pade,
    eval_R,
    eval_R_cleared,
    hankel_system,
    kernel_vector,
    normalize_and_j,
    series_of_R,
)
from .ratfunc import RatFunc, parse_ratfunc
from .candidates import Candidate, builtin_candidate
from .growth import (
    GrowthReport,
    contradiction_report,
    denominator_scan,
    exponent_fit,
    gap_series,
    log_spaced_ints,
    theta_hat,
)
from .liouville import (
    ApproximantSeq,
    approximant_seq,
    liouville_constant_approximant,
    liouville_constant_seq,
    maillet_transform,
    omega_sequence,
    tail_bound,
)

__version__ = "0.1.0"

__all__ = [
    "ApproximantSeq",
    "Candidate",
    "ConstructionError",
    "DomainError",
    "GrowthReport",
    "HankelSystem",
    "InputError",
    "Interval",
    "PadeApproximant",
    "PoleError",
    "Poly",
    "RatFunc",
    "TruncSeries",
    "approximant_seq",
    "build_pade",
    "builtin_candidate",
    "contradiction_report",
    "den_of",
    "denominator_scan",
    "eval_R",
    "eval_R_cleared",
    "exponent_fit",
    "format_rational",
    "gap_series",
    "hankel_system",
    "kernel_vector",
    "liouville_constant_approximant",
    "liouville_constant_seq",
    "log_spaced_ints",
    "maillet_transform",
    "normalize_and_j",
    "omega_sequence",
    "parse_rational",
    "parse_ratfunc",
    "reduce_rational",
    "series_of_R",
    "tail_bound",
    "theta_hat",
]
