"""Damped Jaynes-Cummings dynamics of a Cooper pair box coupled to a nanomechanical resonator."""

__version__ = "0.1.0"

from .dynamics import (
    AmplitudeState,
    BlockSolution,
    IntegrationError,
    IntegratorConfig,
    Trajectory,
    analytic_block,
    analytic_state,
    evolve_block,
    evolve_state,
    norm_squared,
)
from .model import (
    CatState,
    ConfigurationError,
    Constant,
    DeviceParams,
    ModelParams,
    Sinusoidal,
    Zero,
    cat_coefficients,
    detuning_value,
    device_to_model,
    effective_frequencies,
)
from .observables import ObservableSeries, entropy, inner_products, inversion, series
from .spectrum import SpectrumResult, power_spectrum

__all__ = [
    "AmplitudeState", "BlockSolution", "CatState", "ConfigurationError", "Constant", "DeviceParams",
    "IntegrationError", "IntegratorConfig", "ModelParams", "ObservableSeries", "Sinusoidal",
    "SpectrumResult", "Trajectory", "Zero", "analytic_block", "analytic_state", "cat_coefficients",
    "detuning_value", "device_to_model", "effective_frequencies", "entropy", "evolve_block",
    "evolve_state", "inner_products", "inversion", "norm_squared", "power_spectrum", "series",
]
