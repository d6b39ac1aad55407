"""
Entanglement entropy at resonance
=================================

Qubit starts excited, resonator in an even cat state with alpha = 5, and
omega = omega0 = 2000. We compare three decay rates.
"""

import numpy as np

from cpbnr import IntegratorConfig, ModelParams, Zero, evolve_state, series
from cpbnr.observables import LN2

cfg = IntegratorConfig(t_max=100.0, n_samples=2001)

# %%
# Evolve all populated Fock blocks; odd blocks are empty for an even cat.
runs = {}
for gamma in (0.0, 0.01, 0.05):
    traj = evolve_state(ModelParams(gamma=gamma), Zero(), cfg)
    runs[gamma] = series(traj)

# %%
# At gamma = 0 the entropy saturates near ln 2 while the inversion collapses.
obs = runs[0.0]
early = obs.tau <= 50
print(f"max S(tau <= 50) / ln2 = {obs.entropy[early].max() / LN2:.6f}")
plateau = obs.tau[(obs.entropy > 0.99 * LN2)]
print(f"S within 1% of ln2 first at tau = {plateau[0]:.2f}")

# %%
# Without renormalization the decayed state drifts toward S = ln2; with it,
# the entropy barely depends on gamma. Both are shown.
for gamma, obs in runs.items():
    traj = evolve_state(ModelParams(gamma=gamma), Zero(), cfg)
    renorm = series(traj, renormalize=True)
    mean_plain = np.trapezoid(obs.entropy, obs.tau) / 100
    mean_renorm = np.trapezoid(renorm.entropy, renorm.tau) / 100
    print(f"gamma={gamma:<5} <S>={mean_plain:.6f}  renormalized <S>={mean_renorm:.6f}  N2(100)={obs.norm2[-1]:.4f}")

# %%
try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, axes = plt.subplots(3, 1, sharex=True, figsize=(6, 7))
    for ax, (gamma, obs) in zip(axes, runs.items()):
        ax.plot(obs.tau, obs.entropy, lw=0.8)
        ax.axhline(LN2, color="k", lw=0.5, ls=":")
        ax.set_ylabel(f"S, gamma={gamma}")
    axes[-1].set_xlabel("lambda0 t")
    fig.savefig("resonant_entropy.png", dpi=120)
