"""Reduced-state quantities: entanglement entropy and qubit inversion."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import AmplitudeState, Trajectory

LN2 = float(np.log(2.0))
CLAMP_TOL = 1e-12


class ConsistencyError(ArithmeticError):
    """A reduced-state eigenvalue fell outside [0, 1] beyond rounding."""


@dataclass(frozen=True)
class ReducedInnerProducts:
    r11: float
    r22: float
    r12: complex


@dataclass(frozen=True)
class ObservableSeries:
    tau: np.ndarray
    entropy: np.ndarray
    inversion: np.ndarray
    norm2: np.ndarray

    def __post_init__(self):
        m = len(self.tau)
        if not (len(self.entropy) == len(self.inversion) == len(self.norm2) == m):
            raise ValueError("observable columns must have equal length")
        if m > 1 and not np.all(np.diff(self.tau) > 0):
            raise ValueError("tau must be strictly increasing")


def _products(ce: np.ndarray, cg: np.ndarray):
    # ce[..., n] = C_{e,n}, cg[..., n] = C_{g,n+1}; cross term pairs C*_{e,n+1} with C_{g,n+1}
    r11 = (np.abs(ce) ** 2).sum(axis=-1)
    r22 = (np.abs(cg) ** 2).sum(axis=-1)
    r12 = (np.conj(ce[..., 1:]) * cg[..., :-1]).sum(axis=-1)
    return r11, r22, r12


def inner_products(state: AmplitudeState) -> ReducedInnerProducts:
    """<R1|R1> = sum |C_{e,n}|^2, <R2|R2> = sum |C_{g,n+1}|^2, <R1|R2> = sum C*_{e,n+1} C_{g,n+1}."""
    r11, r22, r12 = _products(state.ce, state.cg)
    return ReducedInnerProducts(float(r11), float(r22), complex(r12))


def eigenvalues(r11, r22, r12, renormalize: bool = False):
    """Lambda+- = (1 +- sqrt((r11 - r22)^2 + 4|r12|^2)) / 2.

    With ``renormalize`` the inner products are divided by r11 + r22 first,
    i.e. the decayed state is renormalized before taking the trace.
    """
    r11 = np.asarray(r11, dtype=float)
    r22 = np.asarray(r22, dtype=float)
    r12 = np.asarray(r12)
    if renormalize:
        total = r11 + r22
        r11, r22, r12 = r11 / total, r22 / total, r12 / total
    root = np.sqrt((r11 - r22) ** 2 + 4.0 * np.abs(r12) ** 2)
    return 0.5 * (1.0 + root), 0.5 * (1.0 - root)


def _entropy_from(lp, lm):
    if np.any(lm < -CLAMP_TOL):
        raise ConsistencyError(f"negative reduced eigenvalue {float(np.min(lm)):.3e}")
    lm = np.clip(lm, 0.0, None)
    lp = np.clip(lp, 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        s = -(np.where(lp > 0, lp * np.log(lp), 0.0) + np.where(lm > 0, lm * np.log(lm), 0.0))
    return np.clip(s, 0.0, LN2)


def entropy(state: AmplitudeState, renormalize: bool = False) -> float:
    """Von Neumann entropy -[L+ ln L+ + L- ln L-] of the reduced two-level state, 0 ln 0 = 0."""
    p = inner_products(state)
    return float(_entropy_from(*eigenvalues(p.r11, p.r22, p.r12, renormalize)))


def entropy_from_products(r11, r22, r12, renormalize: bool = False):
    return _entropy_from(*eigenvalues(r11, r22, r12, renormalize))


def inversion(state: AmplitudeState) -> float:
    """sum_n |C_{e,n}|^2 - |C_{g,n+1}|^2."""
    return float((np.abs(state.ce) ** 2).sum() - (np.abs(state.cg) ** 2).sum())


def series(states, renormalize: bool = False) -> ObservableSeries:
    """Entropy, inversion and squared norm along a trajectory."""
    if isinstance(states, Trajectory):
        tau, ce, cg = states.t, states.ce, states.cg
    else:
        states = list(states)
        tau = np.array([s.t for s in states], dtype=float)
        ce = np.array([s.ce for s in states])
        cg = np.array([s.cg for s in states])
    r11, r22, r12 = _products(ce, cg)
    return ObservableSeries(
        tau=np.asarray(tau, dtype=float),
        entropy=entropy_from_products(r11, r22, r12, renormalize),
        inversion=r11 - r22,
        norm2=r11 + r22,
    )
