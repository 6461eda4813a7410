"""Open quantum system evolution through minimal unitary dilations of Kraus operators."""

from .channel import (
    DensityMatrix,
    KrausReport,
    KrausSet,
    PureStateEnsemble,
    amplitude_damping_kraus,
    apply_channel_oracle,
    benchmark_ensemble,
    ensemble_to_density,
    validate_kraus,
)
from .dilation import Dilation, defect, dilate, pad_input, project_h
from .errors import (
    DimensionMismatch,
    InternalConsistency,
    InvalidParameter,
    KrausDilationError,
    MissingBranch,
    NotContraction,
    NotHermitian,
    NotNormalized,
    NotPSD,
    NotUnitary,
    ZeroObservable,
)
from .evolve import (
    BranchOutput,
    Observable,
    build_observable,
    evolve_branch,
    expectation,
    expectation_vectorized,
    lift_kraus,
    populations,
    populations_in_basis,
    populations_vectorized,
    vectorize,
)
from .gatecount import ComplexityReport, TwoLevelGate, complexity_report, count_lower_nonzeros, two_level_decompose
from .linalg import cholesky_psd, hs_norm, is_unitary, kron, operator_norm, principal_sqrt_psd
from .sampler import ShotRecord, sample_output

__version__ = "0.1.0"
