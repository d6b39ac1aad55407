"""Model parameters, detuning profiles and the initial cat state.

Conventions
-----------
- hbar = 1 and the bare coupling lambda0 = 1 sets the unit of time and
  frequency. Every frequency below is a multiple of lambda0 and every time is
  the dimensionless tau = lambda0 * t.
- The mode frequency and coupling are modulated together by the detuning
  f(t): omega(t) = omega + f(t), lambda(t) = lambda0 * (1 + f(t) / omega).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

TAIL_TOLERANCE = 1e-12


class ConfigurationError(ValueError):
    """Raised when a parameter set violates a model invariant."""


# ---------------------------------------------------------------------------
# Cat state
# ---------------------------------------------------------------------------

def cat_normalization(alpha: float) -> float:
    """eta = [2 + 2 exp(-2 alpha^2)]^(-1/2) for the even cat eta(|alpha> + |-alpha>)."""
    return 1.0 / math.sqrt(2.0 + 2.0 * math.exp(-2.0 * alpha * alpha))


def _log_abs_coefficient(alpha: float, n: np.ndarray) -> np.ndarray:
    # log|F_n| for even n; log-Gamma keeps n! out of floating point range issues
    eta = cat_normalization(alpha)
    return (math.log(2.0 * eta) - 0.5 * alpha * alpha
            + n * math.log(alpha) - 0.5 * gammaln(n + 1.0))


def truncation_tail(alpha: float, n_max: int) -> float:
    """Probability weight sum_{n > n_max} F_n^2 dropped by the truncation.

    Summed directly from the tail terms, so values far below machine epsilon
    are resolved instead of being lost in ``1 - sum``.
    """
    if alpha == 0.0:
        return 0.0
    # terms decay super-exponentially once n > alpha^2; 400 extra terms is ample
    n = np.arange(n_max + 1, n_max + 400, dtype=float)
    n = n[n % 2 == 0]
    return float(np.exp(2.0 * _log_abs_coefficient(alpha, n)).sum())


def minimal_n_max(alpha: float, tol: float = TAIL_TOLERANCE) -> int:
    """Smallest n_max >= alpha^2 + 8 alpha + 10 whose truncation tail is below ``tol``."""
    n = max(1, math.ceil(alpha * alpha + 8.0 * alpha + 10.0))
    while truncation_tail(alpha, n) >= tol:
        n += 1
    return n


@dataclass(frozen=True)
class CatState:
    """Fock coefficients F_n of the even cat state, n = 0..n_max."""

    coeffs: np.ndarray
    eta: float

    @property
    def n_max(self) -> int:
        return len(self.coeffs) - 1


def cat_coefficients(alpha: float, n_max: int) -> CatState:
    """Expand eta(|alpha> + |-alpha>) in the Fock basis up to ``n_max``.

    F_n = 2 eta exp(-alpha^2/2) alpha^n / sqrt(n!) for even n, 0 for odd n.
    """
    if alpha < 0:
        raise ConfigurationError(f"alpha must be >= 0, got {alpha}")
    if n_max < 0:
        raise ConfigurationError(f"n_max must be >= 0, got {n_max}")
    tail = truncation_tail(alpha, n_max)
    if tail >= TAIL_TOLERANCE:
        raise ConfigurationError(
            f"n_max={n_max} truncates weight {tail:.3e} of the alpha={alpha} cat state "
            f"(limit {TAIL_TOLERANCE:g}); use n_max >= {minimal_n_max(alpha)}"
        )
    eta = cat_normalization(alpha)
    coeffs = np.zeros(n_max + 1)
    if alpha == 0.0:
        coeffs[0] = 2.0 * eta
    else:
        even = np.arange(0, n_max + 1, 2)
        coeffs[even] = np.exp(_log_abs_coefficient(alpha, even.astype(float)))
    coeffs.setflags(write=False)
    return CatState(coeffs=coeffs, eta=eta)


# ---------------------------------------------------------------------------
# Detuning profiles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Zero:
    """Resonant case, f(t) = 0."""

    kind = "zero"

    def value(self, t):
        return np.zeros_like(t, dtype=float) if np.ndim(t) else 0.0

    def integral(self, t):
        """int_0^t f(s) ds."""
        return np.zeros_like(t, dtype=float) if np.ndim(t) else 0.0


@dataclass(frozen=True)
class Constant:
    """Constant detuning f(t) = delta."""

    delta: float
    kind = "constant"

    def value(self, t):
        return np.full_like(t, self.delta, dtype=float) if np.ndim(t) else float(self.delta)

    def integral(self, t):
        return self.delta * np.asarray(t, dtype=float) if np.ndim(t) else self.delta * t


@dataclass(frozen=True)
class Sinusoidal:
    """Modulated detuning f(t) = c sin(omega_prime t)."""

    c: float
    omega_prime: float
    kind = "sinusoidal"

    def __post_init__(self):
        if not self.omega_prime > 0:
            raise ConfigurationError(f"omega_prime must be > 0, got {self.omega_prime}")

    def value(self, t):
        return self.c * np.sin(self.omega_prime * t)

    def integral(self, t):
        return self.c * (1.0 - np.cos(self.omega_prime * t)) / self.omega_prime


DetuningProfile = Zero | Constant | Sinusoidal


def detuning_value(profile: DetuningProfile, t):
    """f(t) for the given profile (scalar or array ``t``)."""
    return profile.value(t)


# ---------------------------------------------------------------------------
# Model parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModelParams:
    """Parameters of the damped, detuned Jaynes-Cummings Hamiltonian.

    Attributes
    ----------
    omega : float
        Resonator frequency.
    omega0 : float
        Qubit transition frequency.
    gamma : float
        Decay rate of the excited qubit level (non-Hermitian -i gamma/2 |e><e|).
    alpha : float
        Amplitude of the initial even cat state.
    n_max : int, optional
        Fock truncation; defaults to :func:`minimal_n_max`.
    lambda0 : float
        Bare coupling. Fixed to 1 since it defines the unit system.
    """

    omega: float = 2000.0
    omega0: float = 2000.0
    gamma: float = 0.0
    alpha: float = 5.0
    n_max: int | None = None
    lambda0: float = field(default=1.0)

    def __post_init__(self):
        if not self.omega > 0:
            raise ConfigurationError(f"omega must be > 0, got {self.omega}")
        if not self.omega0 >= 0:
            raise ConfigurationError(f"omega0 must be >= 0, got {self.omega0}")
        if not self.gamma >= 0:
            raise ConfigurationError(f"gamma must be >= 0, got {self.gamma}")
        if not self.alpha >= 0:
            raise ConfigurationError(f"alpha must be >= 0, got {self.alpha}")
        if self.lambda0 != 1.0:
            raise ConfigurationError("lambda0 is the unit of frequency and must equal 1")
        if self.n_max is None:
            object.__setattr__(self, "n_max", minimal_n_max(self.alpha))
        if int(self.n_max) != self.n_max or self.n_max < 1:
            raise ConfigurationError(f"n_max must be an integer >= 1, got {self.n_max}")
        object.__setattr__(self, "n_max", int(self.n_max))
        tail = truncation_tail(self.alpha, self.n_max)
        if tail >= TAIL_TOLERANCE:
            raise ConfigurationError(
                f"n_max={self.n_max} truncates weight {tail:.3e} for alpha={self.alpha}; "
                f"use n_max >= {minimal_n_max(self.alpha)}"
            )

    def cat_state(self) -> CatState:
        return cat_coefficients(self.alpha, self.n_max)


def check_profile(params: ModelParams, profile: DetuningProfile) -> None:
    """Warn when a sinusoidal profile leaves the regime omega' < c << omega0, omega."""
    if isinstance(profile, Sinusoidal):
        slow = min(params.omega, params.omega0) if params.omega0 > 0 else params.omega
        if not (profile.omega_prime < abs(profile.c) <= 0.1 * slow):
            warnings.warn(
                f"sinusoidal detuning c={profile.c}, omega'={profile.omega_prime} is outside "
                f"omega' < c << min(omega, omega0)={slow}",
                stacklevel=2,
            )


def effective_frequencies(params: ModelParams, profile: DetuningProfile, t):
    """Instantaneous (omega(t), lambda(t)) for the modulated resonator."""
    f = profile.value(t)
    return params.omega + f, params.lambda0 * (1.0 + f / params.omega)


# ---------------------------------------------------------------------------
# Device mapping
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DeviceParams:
    """Circuit-level quantities of the flux-coupled Cooper pair box.

    ``phi_x`` is the external loop flux in units of the flux quantum and
    ``b_field_times_length_times_x0`` the dimensionless product
    pi B l x0 / Phi0, with x0 = sqrt(m omega / 2) taken as given.
    """

    ej0: float
    ec: float
    ng: float
    phi_x: float
    b_field_times_length_times_x0: float

    def __post_init__(self):
        if self.ej0 < 0 or self.ec < 0:
            raise ConfigurationError("Josephson and charging energies must be >= 0")


def device_to_model(dev: DeviceParams) -> tuple[float, float]:
    """Return (lambda0, omega0) in the device's energy units."""
    lambda0 = -4.0 * dev.ej0 * math.cos(math.pi * dev.phi_x) * dev.b_field_times_length_times_x0
    omega0 = 8.0 * dev.ec * (dev.ng - 0.5)
    return lambda0, omega0
