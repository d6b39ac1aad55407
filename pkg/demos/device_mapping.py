"""
From circuit parameters to model constants
==========================================

lambda0 = -4 E_J cos(pi Phi_x / Phi_0) (pi B l x0 / Phi_0) and
omega0 = 8 E_c (N_g - 1/2). Every model frequency is then expressed in
units of |lambda0|.
"""

from cpbnr import DeviceParams, device_to_model

dev = DeviceParams(ej0=2.0, ec=1.0, ng=0.75, phi_x=0.1, b_field_times_length_times_x0=0.005)
lam, w0 = device_to_model(dev)
print(f"lambda0 = {lam:.6f}, omega0 = {w0:.6f}, omega0 / |lambda0| = {w0 / abs(lam):.1f}")

# Setting the gate charge to 1/2 closes the qubit splitting; half a flux quantum kills the coupling.
print(device_to_model(DeviceParams(2.0, 1.0, 0.5, 0.1, 0.005)))
print(device_to_model(DeviceParams(2.0, 1.0, 0.75, 0.5, 0.005)))
