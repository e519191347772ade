"""Complex-valued Chinese remaindering with Gaussian-integer moduli.

Exact reconstruction from error-free remainders, fast maximum-likelihood
estimation from noisy remainders, robustness analysis, wrapped-Gaussian
noise tools, a multi-channel self-reset ADC simulation, and seeded
Monte-Carlo experiment campaigns.
"""

from .cmod import circ_dist, circ_dist_real, in_centered, in_fundamental, mod_c, mod_real
from .crt import (
    CommonSolution,
    InconsistentRemaindersError,
    InvalidSystemError,
    ModulusSystem,
    build_system,
    reconstruct_unit_gcd,
    remainder_vector,
    solve_common,
)
from .gaussian import (
    GaussianInt,
    euclid_gcd,
    extended_gcd,
    format_gaussian,
    is_coprime,
    mod_inverse,
    parse_gaussian,
)
from .mle import (
    Estimate,
    InvalidSigmaError,
    NoisyRemainders,
    compute_weights,
    estimate,
    estimate_dual_real,
    oracle_grid_mle,
)
from .robustness import (
    ErrorVector,
    error_preserving_probability,
    in_robust_region,
    predicted_common_shift,
    subset_condition,
    theoretical_rmse,
    weighted_mean_error,
)

__all__ = [
    "GaussianInt",
    "euclid_gcd",
    "extended_gcd",
    "mod_inverse",
    "is_coprime",
    "parse_gaussian",
    "format_gaussian",
    "mod_c",
    "mod_real",
    "circ_dist",
    "circ_dist_real",
    "in_fundamental",
    "in_centered",
    "ModulusSystem",
    "build_system",
    "CommonSolution",
    "solve_common",
    "reconstruct_unit_gcd",
    "remainder_vector",
    "InvalidSystemError",
    "InconsistentRemaindersError",
    "NoisyRemainders",
    "Estimate",
    "InvalidSigmaError",
    "compute_weights",
    "estimate",
    "estimate_dual_real",
    "oracle_grid_mle",
    "ErrorVector",
    "subset_condition",
    "in_robust_region",
    "predicted_common_shift",
    "weighted_mean_error",
    "theoretical_rmse",
    "error_preserving_probability",
]
