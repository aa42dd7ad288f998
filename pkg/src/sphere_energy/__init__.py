"""Numerical certification that constant functions maximize additive energy
(the Gowers u2 norm) among functions supported on a Hamming sphere with
fixed l2 norm."""

from .compression import (
    CompressionTrace,
    TraceRecord,
    compress,
    compression_distance,
    sweep,
    symmetrize_to_fixpoint,
)
from .functionals import (
    additive_energy,
    coset_bracket,
    energy_via_krawtchouk,
    krawtchouk,
    l2_norm,
    l4_fourth,
    mu_constant,
    u2_fourth_by_cosets,
    u2_fourth_fast,
    u2_fourth_naive,
)
from .hypercube import (
    MAX_DIMENSION,
    PairIndex,
    Point,
    SphereSpec,
    all_pairs,
    flip_pair,
    pair_coset,
    pair_parity,
    project_pair,
    sphere_connected,
    sphere_points,
    weight,
)
from .optimize import (
    OptimizerConfig,
    OptimizerResult,
    ZeroRestrictionError,
    maximize_ratio,
    project,
    ratio_objective,
    u2_gradient,
)
from .spectral import (
    DenseFunction,
    Spectrum,
    fourier_forward,
    fourier_inverse,
    fwht_in_place,
)
from .verify import (
    DualityReport,
    LemmaSuiteReport,
    VerifyReport,
    VerifySweep,
    lemma_suite,
    remark_duality_check,
    signed_compression_search,
    verify_all,
    verify_theorem,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_DIMENSION",
    "CompressionTrace",
    "DenseFunction",
    "DualityReport",
    "LemmaSuiteReport",
    "OptimizerConfig",
    "OptimizerResult",
    "PairIndex",
    "Point",
    "Spectrum",
    "SphereSpec",
    "TraceRecord",
    "VerifyReport",
    "VerifySweep",
    "ZeroRestrictionError",
    "additive_energy",
    "all_pairs",
    "compress",
    "compression_distance",
    "coset_bracket",
    "energy_via_krawtchouk",
    "flip_pair",
    "fourier_forward",
    "fourier_inverse",
    "fwht_in_place",
    "krawtchouk",
    "l2_norm",
    "l4_fourth",
    "lemma_suite",
    "maximize_ratio",
    "mu_constant",
    "pair_coset",
    "pair_parity",
    "project",
    "project_pair",
    "ratio_objective",
    "remark_duality_check",
    "signed_compression_search",
    "sphere_connected",
    "sphere_points",
    "sweep",
    "symmetrize_to_fixpoint",
    "u2_fourth_by_cosets",
    "u2_fourth_fast",
    "u2_fourth_naive",
    "u2_gradient",
    "verify_all",
    "verify_theorem",
    "weight",
]
