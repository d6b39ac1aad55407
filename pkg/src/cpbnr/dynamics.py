"""Time evolution of the qubit-resonator amplitudes.

The Hamiltonian only couples |e,n> with |g,n+1>, so the amplitude equations
split into independent 2x2 blocks labelled by n. Each populated block is
integrated on its own (see :mod:`cpbnr._dopri` for the co-rotating frame) and
the results are assembled on a shared uniform time grid.

Storage convention: ``ce[n]`` is C_{e,n} and ``cg[n]`` is C_{g,n+1} for
n = 0..n_max. C_{g,0} stays zero for the excited initial state and is not stored.
"""

from __future__ import annotations

import cmath
import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _dopri
from .model import CatState, Constant, DetuningProfile, ModelParams, Sinusoidal, Zero


class IntegrationError(RuntimeError):
    """The adaptive integrator could not complete a block."""

    def __init__(self, n, t, h, reason):
        super().__init__(f"block n={n}: {reason} at t={t:.17g} (step h={h:.3e})")
        self.n = n
        self.t = t
        self.h = h


@dataclass(frozen=True)
class IntegratorConfig:
    rel_tol: float = 1e-12
    abs_tol: float = 1e-14
    t_max: float = 100.0
    n_samples: int = 2001
    max_steps: int = 10_000_000

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("rel_tol and abs_tol must be > 0")
        if int(self.n_samples) != self.n_samples or self.n_samples < 2:
            raise ValueError(f"n_samples must be an integer >= 2, got {self.n_samples}")
        if not self.t_max > 0:
            raise ValueError(f"t_max must be > 0, got {self.t_max}")

    def grid(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, int(self.n_samples))


@dataclass(frozen=True)
class AmplitudeState:
    """Lab-frame amplitudes at time ``t``."""

    t: float
    ce: np.ndarray
    cg: np.ndarray


@dataclass(frozen=True)
class BlockSolution:
    """Samples of (C_{e,n}, C_{g,n+1}) for a single block on a time grid."""

    n: int
    t: np.ndarray
    ce: np.ndarray
    cg: np.ndarray
    n_accepted: int = 0
    n_rejected: int = 0

    @property
    def samples(self):
        return list(zip(self.t, self.ce, self.cg))


class Trajectory(Sequence):
    """Sequence of :class:`AmplitudeState` backed by (n_samples, n_max+1) arrays."""

    def __init__(self, t: np.ndarray, ce: np.ndarray, cg: np.ndarray):
        self.t = t
        self.ce = ce
        self.cg = cg
        for arr in (t, ce, cg):
            arr.setflags(write=False)

    def __len__(self):
        return len(self.t)

    def __getitem__(self, k):
        if isinstance(k, slice):
            return Trajectory(self.t[k].copy(), self.ce[k].copy(), self.cg[k].copy())
        return AmplitudeState(float(self.t[k]), self.ce[k], self.cg[k])

    def norm_squared(self) -> np.ndarray:
        return (np.abs(self.ce) ** 2).sum(axis=1) + (np.abs(self.cg) ** 2).sum(axis=1)


def _profile_args(profile: DetuningProfile):
    if isinstance(profile, Zero):
        return _dopri.PROFILE_ZERO, 0.0, 0.0
    if isinstance(profile, Constant):
        return _dopri.PROFILE_CONSTANT, float(profile.delta), 0.0
    if isinstance(profile, Sinusoidal):
        return _dopri.PROFILE_SINUSOIDAL, float(profile.c), float(profile.omega_prime)
    raise TypeError(f"unknown detuning profile {profile!r}")


def common_phase(n: int, params: ModelParams, profile: DetuningProfile, t) -> np.ndarray:
    """exp(-i (n + 1/2) Theta(t)), the factor removed by the co-rotating frame."""
    theta = params.omega * np.asarray(t, dtype=float) + profile.integral(np.asarray(t, dtype=float))
    return np.exp(-1j * (n + 0.5) * theta)


def evolve_block(n: int, params: ModelParams, profile: DetuningProfile,
                 cfg: IntegratorConfig, f_n: complex, grid: np.ndarray | None = None) -> BlockSolution:
    """Integrate block n from C_{e,n}(0) = f_n, C_{g,n+1}(0) = 0."""
    if grid is None:
        grid = cfg.grid()
    kind, p1, p2 = _profile_args(profile)
    a, b, status, t_stop, h_stop, n_acc, n_rej = _dopri.integrate_block(
        math.sqrt(n + 1.0) * params.lambda0, float(params.omega), float(params.omega0),
        float(params.gamma), kind, p1, p2, complex(f_n), np.ascontiguousarray(grid, dtype=float),
        float(cfg.rel_tol), float(cfg.abs_tol), int(cfg.max_steps),
    )
    if status == _dopri.STATUS_STEP_UNDERFLOW:
        raise IntegrationError(n, t_stop, h_stop, "step size underflow")
    if status == _dopri.STATUS_MAX_STEPS:
        raise IntegrationError(n, t_stop, h_stop, f"exceeded {cfg.max_steps} steps")
    phase = common_phase(n, params, profile, grid)
    return BlockSolution(n=n, t=grid, ce=a * phase, cg=b * phase, n_accepted=n_acc, n_rejected=n_rej)


def evolve_state(params: ModelParams, profile: DetuningProfile, cfg: IntegratorConfig,
                 cat: CatState | None = None, threads: int = 1) -> Trajectory:
    """Evolve the initial state sum_n F_n |e,n> and return the full trajectory.

    Blocks with F_n = 0 are never integrated; their amplitudes stay exactly
    zero. ``threads`` > 1 integrates blocks concurrently; the result does not
    depend on it.
    """
    if cat is None:
        cat = params.cat_state()
    if cat.n_max != params.n_max:
        raise ValueError(f"cat state has n_max={cat.n_max}, params have n_max={params.n_max}")
    grid = cfg.grid()
    ce = np.zeros((len(grid), params.n_max + 1), dtype=complex)
    cg = np.zeros_like(ce)
    populated = [n for n in range(params.n_max + 1) if cat.coeffs[n] != 0]

    def work(n):
        return evolve_block(n, params, profile, cfg, cat.coeffs[n], grid)

    if threads > 1 and len(populated) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            blocks = list(pool.map(work, populated))
    else:
        blocks = [work(n) for n in populated]
    for blk in blocks:
        ce[:, blk.n] = blk.ce
        cg[:, blk.n] = blk.cg
    return Trajectory(grid, ce, cg)


def analytic_block(n: int, params: ModelParams, delta: float, t, f_n: complex = 1.0):
    """Closed-form (C_{e,n}(t), C_{g,n+1}(t)) for a constant detuning ``delta``.

    Evaluated with omega -> omega + delta and lambda0 -> lambda0 (1 + delta/omega),
    which makes the expressions exact for constant f. Uses

        delta_n = gamma + 2i omega (1 + 2n)
        zeta^2  = gamma (gamma + 4i (omega0 - omega)) - 4 (omega^2 + omega0^2)
                  - 16 lambda^2 (1 + n) + 8 omega omega0

    with the principal square root for zeta.
    """
    t = np.asarray(t, dtype=float)
    gam = params.gamma
    w0 = params.omega0
    w = params.omega + delta
    lam = params.lambda0 * (1.0 + delta / params.omega)
    rate = gam + 2j * w * (1 + 2 * n)
    zeta = cmath.sqrt(gam * (gam + 4j * (w0 - w)) - 4.0 * (w * w + w0 * w0)
                      - 16.0 * lam * lam * (1 + n) + 8.0 * w * w0)
    envelope = np.exp(-0.25 * rate * t)
    if abs(zeta) * float(np.max(np.abs(t), initial=0.0)) >= 1e-8:
        ep = np.exp(0.25 * zeta * t)
        em = np.exp(-0.25 * zeta * t)
        cg = (1.0 / zeta) * (-2j * lam * envelope * (ep - em) * math.sqrt(n + 1) * f_n)
        ce = (1.0 / (2.0 * zeta)) * (1j * envelope * (ep * (1j * gam + 2 * w - 1j * zeta - 2 * w0)
                                                      - em * (1j * gam + 2 * w + 1j * zeta - 2 * w0)) * f_n)
    else:
        # (e^{zt/4} - e^{-zt/4}) / z -> t/2 (1 + (zt/4)^2 / 6); same rearrangement for C_e
        x = 0.25 * zeta * t
        quotient = 0.5 * t * (1.0 + x * x / 6.0)
        cosh = 1.0 + 0.5 * x * x
        cg = -2j * lam * envelope * quotient * math.sqrt(n + 1) * f_n
        ce = envelope * (cosh - (0.5 * gam - 1j * (w - w0)) * quotient) * f_n
    return ce, cg


def analytic_state(params: ModelParams, delta: float, t, cat: CatState | None = None) -> Trajectory:
    """Closed-form trajectory for constant detuning, summed over all blocks."""
    if cat is None:
        cat = params.cat_state()
    t = np.atleast_1d(np.asarray(t, dtype=float))
    ce = np.zeros((len(t), params.n_max + 1), dtype=complex)
    cg = np.zeros_like(ce)
    for n in range(params.n_max + 1):
        if cat.coeffs[n] != 0:
            ce[:, n], cg[:, n] = analytic_block(n, params, delta, t, cat.coeffs[n])
    return Trajectory(t, ce, cg)


def norm_squared(state: AmplitudeState) -> float:
    """sum_n |C_{e,n}|^2 + |C_{g,n+1}|^2."""
    return float((np.abs(state.ce) ** 2).sum() + (np.abs(state.cg) ** 2).sum())


def initial_state(cat: CatState) -> AmplitudeState:
    return AmplitudeState(0.0, cat.coeffs.astype(complex), np.zeros(cat.n_max + 1, dtype=complex))


def lab_frame_rhs(n: int, params: ModelParams, profile: DetuningProfile):
    """Right-hand side of the raw block equations, y = [C_{e,n}, C_{g,n+1}].

    Only used to cross-check the co-rotating integration on short horizons.
    """
    g = math.sqrt(n + 1.0)

    def rhs(t, y):
        f = profile.value(t)
        w = params.omega + f
        lam = params.lambda0 * (1.0 + f / params.omega)
        ce, cg = y
        return np.array([
            (-1j * n * w - 0.5j * params.omega0 - 0.5 * params.gamma) * ce - 1j * lam * g * cg,
            (-1j * (n + 1) * w + 0.5j * params.omega0) * cg - 1j * lam * g * ce,
        ])

    return rhs
