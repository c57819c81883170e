"""Cardinality-restriction penalty encoders for QUBO solvers.

Build exact-rational penalty models that force the sum of a block of binary
variables into an allowed set, pick the construction with the fewest dummy
variables, verify the result by brute-force enumeration, and benchmark how a
noisy (Boltzmann) annealer degrades the ideal transfer step.
"""

from .core import (
    ConstructionError,
    DataQualityError,
    DimensionError,
    EncodedRestriction,
    EncodingKind,
    EncodingNotApplicableError,
    ParameterError,
    QuboModel,
    RestrictionSpec,
    SizeLimitError,
    as_fraction,
    combine,
    expand_squared_affine,
)
from .encoders import (
    DEFAULT_PARAMS,
    EncoderParams,
    applicable_encoders,
    chain_dummy_count,
    encode_equispaced_linear,
    encode_equispaced_log,
    encode_half_integer_chain,
    encode_half_integer_m2,
    encode_one_hot_general,
    encode_reduced_general,
    encode_single_value,
    log_dummy_count,
    select_optimal,
)
from .oracle import (
    SpectrumReport,
    VerificationResult,
    enumerate_spectrum,
    fractional_energy_ladder,
    sum_spectrum,
    verify,
)
from .sampler import (
    SamplerConfig,
    StrayMassWarning,
    TransferCurve,
    boltzmann_probabilities,
    boltzmann_sample,
    exact_sum_distribution,
    exact_transfer_curve,
    fractional_restriction_model,
    step_distance,
    sum_frequencies,
    sweep_fractional_r,
)

__version__ = "0.1.0"

__all__ = [
    "ConstructionError",
    "DataQualityError",
    "DimensionError",
    "EncodedRestriction",
    "EncodingKind",
    "EncodingNotApplicableError",
    "ParameterError",
    "QuboModel",
    "RestrictionSpec",
    "SizeLimitError",
    "as_fraction",
    "combine",
    "expand_squared_affine",
    "DEFAULT_PARAMS",
    "EncoderParams",
    "applicable_encoders",
    "chain_dummy_count",
    "encode_equispaced_linear",
    "encode_equispaced_log",
    "encode_half_integer_chain",
    "encode_half_integer_m2",
    "encode_one_hot_general",
    "encode_reduced_general",
    "encode_single_value",
    "log_dummy_count",
    "select_optimal",
    "SpectrumReport",
    "VerificationResult",
    "enumerate_spectrum",
    "fractional_energy_ladder",
    "sum_spectrum",
    "verify",
    "SamplerConfig",
    "StrayMassWarning",
    "TransferCurve",
    "boltzmann_probabilities",
    "boltzmann_sample",
    "exact_sum_distribution",
    "exact_transfer_curve",
    "fractional_restriction_model",
    "step_distance",
    "sum_frequencies",
    "sweep_fractional_r",
    "__version__",
]
