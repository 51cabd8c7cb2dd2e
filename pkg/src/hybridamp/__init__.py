"""Linearized model of a driven cavity with Kerr and parametric (OPA) terms,
used as a phase-sensitive amplifier and as a position detector."""

from .errors import (
    GridTooNarrowError,
    HybridAmpError,
    InconsistentSpectraError,
    LinearizationInvalidError,
    LinearizationWarning,
    MultistableError,
    NoSteadyStateError,
    NoTransductionError,
    OracleError,
    PreconditionError,
    ResonanceSingularityError,
    SingularOperatingPointError,
    StaleRootError,
    UnstableSystemError,
    UnsupportedConfigurationError,
    ValidationError,
    VerificationFailure,
)
from .linearization import LinearizedSystem, build_m_matrix, drift_matrix, eigenvalues, is_stable
from .model import (
    MeasurementParams,
    SystemParams,
    empty_cavity_params,
    lambda_for_real_alpha,
    reference_params,
    validate,
    with_real_alpha_kerr,
)
from .noise import NoiseReport, noise_report, quantum_limit_product
from .response import ResponseSpectrum, bandwidth_3db, forward_gain_zero, gain_spectrum, omega_grid, quadrature_gains
from .steady_state import (
    RootInfo,
    SteadyState,
    classify_multistability,
    quintic_coefficients,
    real_alpha_fixed_point,
    solve_photon_number,
)

__version__ = "0.1.0"
