"""Power spectrum of a sampled entropy series.

PS(w) = (1/pi) int_0^tau_max S(tau) exp(i w tau) dtau, evaluated by the
composite trapezoidal rule on the uniform sample grid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .observables import ObservableSeries


@dataclass(frozen=True)
class SpectrumResult:
    omega_grid: np.ndarray
    ps_complex: np.ndarray

    @property
    def ps_abs(self) -> np.ndarray:
        return np.abs(self.ps_complex)

    @property
    def ps_normalized(self) -> np.ndarray:
        mag = self.ps_abs
        peak = mag.max(initial=0.0)
        return mag / peak if peak > 0 else np.zeros_like(mag)


def default_grid(omega_min: float = 0.0, omega_max: float = 2.0, step: float = 5e-4) -> np.ndarray:
    n = int(round((omega_max - omega_min) / step)) + 1
    return omega_min + step * np.arange(n)


def _check_uniform(tau: np.ndarray) -> float:
    if tau.ndim != 1 or len(tau) < 2:
        raise ValueError("need at least 2 samples")
    h = np.diff(tau)
    step = (tau[-1] - tau[0]) / (len(tau) - 1)
    if step <= 0 or np.max(np.abs(h - step)) > 1e-9 * max(abs(step), abs(tau[-1])):
        raise ValueError("sample grid must be uniform and increasing")
    return step


def fourier_integral(tau, values, omega_grid, chunk: int = 256) -> np.ndarray:
    """(1/pi) * trapezoid of values(tau) exp(i w tau) for every w in ``omega_grid``."""
    tau = np.asarray(tau, dtype=float)
    values = np.asarray(values, dtype=float)
    omega_grid = np.atleast_1d(np.asarray(omega_grid, dtype=float))
    h = _check_uniform(tau)
    weights = np.full(len(tau), h)
    weights[0] = weights[-1] = 0.5 * h
    wv = weights * values
    out = np.empty(len(omega_grid), dtype=complex)
    for start in range(0, len(omega_grid), chunk):
        w = omega_grid[start:start + chunk]
        out[start:start + chunk] = np.exp(1j * np.outer(w, tau)) @ wv
    return out / np.pi


def power_spectrum(series: ObservableSeries, omega_grid=None, subtract_mean: bool = False) -> SpectrumResult:
    """Entropy power spectrum of ``series`` on ``omega_grid`` (default [0, 2], step 5e-4)."""
    if omega_grid is None:
        omega_grid = default_grid()
    s = np.asarray(series.entropy, dtype=float)
    if subtract_mean:
        s = s - s.mean()
    omega_grid = np.atleast_1d(np.asarray(omega_grid, dtype=float))
    return SpectrumResult(omega_grid=omega_grid, ps_complex=fourier_integral(series.tau, s, omega_grid))
