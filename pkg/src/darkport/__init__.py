"""Phase super-resolution at an interferometer dark port.

Simulation and estimation tools for a microwave interferometer whose dark
port carries a displaced thermal state: Gaussian state models, the
acquisition chain from voltage records to I/Q samples, parity estimators
(maximum-likelihood and threshold), and the metrology layer that turns
sweeps into resolution and sensitivity statements benchmarked against the
Cramer-Rao bound.
"""

from .backend import active_backend
from .errors import (
    ConfigError,
    DarkportError,
    DegenerateEnsembleError,
    DomainError,
    FitFailureError,
    NoSuperResolvedFeatureError,
    SensitivityDivergenceError,
)
from .estimators import (
    ERROR_MODELS,
    MLFit,
    ParityEstimate,
    ThresholdConfig,
    direct_parity_sensitivity,
    fisher_parity_error,
    ml_fit,
    ml_parity,
    parity_from_fit,
    rician_cdf,
    rician_sf,
    threshold_estimate,
)
from .experiments import ExperimentConfig, RunManifest, load_config, run_experiment
from .homodyne import (
    AcquisitionConfig,
    IQEnsemble,
    IQSample,
    TimeSeries,
    ensemble_from_timeseries,
    extract_iq,
    read_iq_csv,
    read_timeseries_csv,
    sample_phase_space,
    synthesize_timeseries,
    write_iq_csv,
    write_timeseries_csv,
)
from .interferometer import (
    InterferometerConfig,
    output_state,
    parity_vs_phase,
    peak_parity,
    snr_at_time,
    theoretical_fwhm,
)
from .metrology import (
    ResolutionFit,
    ROCCurve,
    SensitivityCurve,
    SweepResult,
    TradeoffCurve,
    cr_bound,
    fit_parity_model,
    loglog_slope,
    min_sensitivity_factor,
    ml_sensitivity_theory,
    ml_sensitivity_theory_min,
    roc_curve,
    sensitivity_from_curve,
    theoretical_sweep,
    threshold_factor,
    threshold_resolution_fwhm,
    threshold_sensitivity_theory,
    tradeoff_curve,
)
from ._version import __version__
from .simulate import simulate_parity_sweep
from .states import (
    VACUUM_VARIANCE,
    GaussianState,
    PhotonBudget,
    budget_of,
    compose_coherent_thermal,
    parity_of_state,
    snr_of,
    wigner_density,
)

__all__ = [
    "AcquisitionConfig",
    "ConfigError",
    "DarkportError",
    "DegenerateEnsembleError",
    "DomainError",
    "ERROR_MODELS",
    "ExperimentConfig",
    "FitFailureError",
    "GaussianState",
    "IQEnsemble",
    "IQSample",
    "InterferometerConfig",
    "MLFit",
    "NoSuperResolvedFeatureError",
    "ParityEstimate",
    "PhotonBudget",
    "ROCCurve",
    "ResolutionFit",
    "RunManifest",
    "SensitivityCurve",
    "SensitivityDivergenceError",
    "SweepResult",
    "ThresholdConfig",
    "TimeSeries",
    "TradeoffCurve",
    "VACUUM_VARIANCE",
    "active_backend",
    "budget_of",
    "compose_coherent_thermal",
    "cr_bound",
    "direct_parity_sensitivity",
    "ensemble_from_timeseries",
    "extract_iq",
    "fisher_parity_error",
    "fit_parity_model",
    "load_config",
    "loglog_slope",
    "min_sensitivity_factor",
    "ml_fit",
    "ml_parity",
    "ml_sensitivity_theory",
    "ml_sensitivity_theory_min",
    "output_state",
    "parity_from_fit",
    "parity_of_state",
    "parity_vs_phase",
    "peak_parity",
    "read_iq_csv",
    "read_timeseries_csv",
    "rician_cdf",
    "rician_sf",
    "roc_curve",
    "run_experiment",
    "sample_phase_space",
    "sensitivity_from_curve",
    "simulate_parity_sweep",
    "snr_at_time",
    "snr_of",
    "synthesize_timeseries",
    "theoretical_fwhm",
    "theoretical_sweep",
    "threshold_estimate",
    "threshold_factor",
    "threshold_resolution_fwhm",
    "threshold_sensitivity_theory",
    "tradeoff_curve",
    "wigner_density",
    "write_iq_csv",
    "write_timeseries_csv",
]
