"""Exact fluctuation theory of tilted-information sums for binary Markov sources.

The library computes, for a stationary two-state Markov chain under
Hamming distortion, the per-letter tilted information at the single-letter
operating point, the exact finite-n law of its block sum (an affine image
of the chain's occupation count), closed-form variances, cumulants, both
finite-n and limiting cumulant generating functions, large-deviation rate
functions, saddlepoint tail estimates, a Monte Carlo harness, and an
exhaustive-enumeration oracle that certifies the closed forms.
"""

from .cgf import (
    CGFCurve,
    RatePoint,
    SaddlepointTail,
    achievable_interval,
    cgf_curve,
    cgf_finite,
    cgf_limit,
    cgf_limit_derivative,
    cgf_limit_second_derivative,
    perron_root,
    rate_function,
    saddlepoint_tail,
)
from .errors import ConvergenceError, RegimeError
from .exact import (
    DP_MAX_N,
    JnLaw,
    OccupationPMF,
    VarianceCorrection,
    centered_cumulants,
    centered_tail_probability,
    jn_law,
    occupation_log2_pgf,
    occupation_pgf,
    occupation_pmf,
    variance_correction,
    variance_exact,
)
from .markov import ChainParams, Trajectory, derive_chain, indicator_autocov, sample_trajectory
from .montecarlo import (
    CltDistance,
    SimReport,
    clt_distance_sweep,
    exact_normal_distance,
    simulate,
)
from .oracle import ENUM_MAX_N, OracleResult, enumerate_pmf, oracle_variance
from .tilting import (
    BAOperatingPoint,
    TiltedStats,
    ba_fixed_point_iterate,
    ba_operating_point,
    binary_entropy,
    jtilt,
    jtilt_generic,
    tilted_stats,
)

__all__ = [
    "BAOperatingPoint",
    "CGFCurve",
    "ChainParams",
    "CltDistance",
    "ConvergenceError",
    "DP_MAX_N",
    "ENUM_MAX_N",
    "JnLaw",
    "OccupationPMF",
    "OracleResult",
    "RatePoint",
    "RegimeError",
    "SaddlepointTail",
    "SimReport",
    "TiltedStats",
    "Trajectory",
    "VarianceCorrection",
    "achievable_interval",
    "ba_fixed_point_iterate",
    "ba_operating_point",
    "binary_entropy",
    "centered_cumulants",
    "centered_tail_probability",
    "cgf_curve",
    "cgf_finite",
    "cgf_limit",
    "cgf_limit_derivative",
    "cgf_limit_second_derivative",
    "clt_distance_sweep",
    "derive_chain",
    "enumerate_pmf",
    "exact_normal_distance",
    "indicator_autocov",
    "jn_law",
    "jtilt",
    "jtilt_generic",
    "occupation_log2_pgf",
    "occupation_pgf",
    "occupation_pmf",
    "oracle_variance",
    "perron_root",
    "rate_function",
    "saddlepoint_tail",
    "sample_trajectory",
    "simulate",
    "tilted_stats",
    "variance_correction",
    "variance_exact",
]

__version__ = "0.1.0"
