"""Quantum error correction under long-range-correlated dephasing noise.

Closed-form statistics of the 3-qubit phase-flip code, RG flows of the
qubit-environment coupling, flawless-history corrections, a dimensional
phase classifier, and a brute-force Gaussian-dephasing oracle.
"""

from .errors import (
    ModelError,
    ParameterError,
    PerturbativeRangeWarning,
    QuadratureError,
    SingularExponentError,
    StrongCouplingError,
)
from .noise import (
    CouplingSet,
    EnvironmentSpec,
    Kernel,
    effective_coupling,
    four_point_normal_ordered,
    hypercube_length,
    multiqubit_offdiagonal,
    spin_boson_offdiagonal,
    two_point_correlator,
)
from .rg import (
    BetaFamily,
    BetaFunctionSpec,
    RgTrajectory,
    beta,
    closed_form_lambda_star,
    integrate_flow,
)
from .code3 import (
    CycleStats,
    DensityMatrix2,
    LogicalState,
    cycle_stats,
    encode,
    encoded_states,
    entropy_asymptotics,
    history_probability,
    mean_history_offdiagonal,
    residual_offdiagonal,
    syndrome_extract,
    von_neumann_entropy,
)
from .histories import (
    FlawlessBranch,
    FlawlessProbability,
    QecSchedule,
    SyndromeHistory,
    breakdown_cycles,
    flawless_probability,
    flawless_residual_decoherence,
    local_error_probability,
    marginal_pole_cycles,
    sample_histories,
)
from .phase import (
    PhaseClass,
    PhaseLabel,
    PhasePoint,
    UPPER_CRITICAL_DIMENSION,
    boundary_delta,
    classify_qec,
    classify_unprotected,
    phi4_relevance,
    scan_grid,
)
from .oracle import (
    DephasingProcess,
    dyson_norm_bound,
    exact_cycle_statistics,
    multi_cycle_offdiagonal,
    ohmic_decay_mc,
    sample_phases,
)

__version__ = "0.1.0"

__all__ = [
    "ModelError", "ParameterError", "PerturbativeRangeWarning",
    "QuadratureError", "SingularExponentError", "StrongCouplingError",
    "CouplingSet", "EnvironmentSpec", "Kernel", "effective_coupling",
    "four_point_normal_ordered", "hypercube_length", "multiqubit_offdiagonal",
    "spin_boson_offdiagonal", "two_point_correlator",
    "BetaFamily", "BetaFunctionSpec", "RgTrajectory", "beta",
    "closed_form_lambda_star", "integrate_flow",
    "CycleStats", "DensityMatrix2", "LogicalState", "cycle_stats", "encode",
    "encoded_states", "entropy_asymptotics", "history_probability",
    "mean_history_offdiagonal", "residual_offdiagonal", "syndrome_extract",
    "von_neumann_entropy",
    "FlawlessBranch", "FlawlessProbability", "QecSchedule", "SyndromeHistory",
    "breakdown_cycles", "flawless_probability", "flawless_residual_decoherence",
    "local_error_probability", "marginal_pole_cycles", "sample_histories",
    "PhaseClass", "PhaseLabel", "PhasePoint", "UPPER_CRITICAL_DIMENSION",
    "boundary_delta", "classify_qec", "classify_unprotected", "phi4_relevance",
    "scan_grid",
    "DephasingProcess", "dyson_norm_bound", "exact_cycle_statistics",
    "multi_cycle_offdiagonal", "ohmic_decay_mc", "sample_phases",
    "__version__",
]
