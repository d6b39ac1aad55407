"""Dormand-Prince 5(4) kernel for one Fock block in the co-rotating frame.

Each block (|e,n>, |g,n+1>) is written as

    C_e = exp(-i (n + 1/2) Theta(t)) a,   C_g = exp(-i (n + 1/2) Theta(t)) b,
    Theta(t) = omega t + int_0^t f(s) ds,

which removes the fast common phase exactly and leaves the slow system

    a' = (i D(t) - gamma/2) a - i lambda(t) sqrt(n+1) b
    b' = -i D(t) b - i lambda(t) sqrt(n+1) a

with D(t) = (omega + f(t) - omega0) / 2. Substituting back reproduces the lab
frame amplitude equations term by term, because d/dt of the phase is
(n + 1/2) omega(t) and the diagonal lab-frame rates are -i n omega(t) - i omega0/2
- gamma/2 and -i (n+1) omega(t) + i omega0/2.

Step control follows Hairer, Norsett & Wanner (DOPRI5): PI controller with
beta = 0.04, safety 0.9, step ratio in [0.2, 10], and the 4th order continuous
extension for output on a fixed grid.
"""

import math

import numpy as np
from numba import njit

PROFILE_ZERO = 0
PROFILE_CONSTANT = 1
PROFILE_SINUSOIDAL = 2

STATUS_OK = 0
STATUS_STEP_UNDERFLOW = 1
STATUS_MAX_STEPS = 2

C2, C3, C4, C5 = 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0
A21 = 1.0 / 5.0
A31, A32 = 3.0 / 40.0, 9.0 / 40.0
A41, A42, A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
A51, A52, A53, A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
A61, A62, A63, A64, A65 = (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0,
                           49.0 / 176.0, -5103.0 / 18656.0)
A71, A73, A74, A75, A76 = (35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0,
                           -2187.0 / 6784.0, 11.0 / 84.0)
E1, E3, E4, E5, E6, E7 = (71.0 / 57600.0, -71.0 / 16695.0, 71.0 / 1920.0,
                          -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0)
D1, D3, D4, D5, D6, D7 = (-12715105075.0 / 11282082432.0, 87487479700.0 / 32700410799.0,
                          -10690763975.0 / 1880347072.0, 701980252875.0 / 199316789632.0,
                          -1453857185.0 / 822651844.0, 69997945.0 / 29380423.0)

SAFE = 0.9
BETA = 0.04
EXPO1 = 0.2 - BETA * 0.75
FACC1 = 1.0 / 0.2
FACC2 = 1.0 / 10.0
UROUND = 2.220446049250313e-16


@njit(cache=True, inline="always")
def _detuning(kind, p1, p2, t):
    if kind == PROFILE_CONSTANT:
        return p1
    if kind == PROFILE_SINUSOIDAL:
        return p1 * math.sin(p2 * t)
    return 0.0


@njit(cache=True, inline="always")
def _rhs(t, a, b, g, omega, omega0, gamma, kind, p1, p2):
    f = _detuning(kind, p1, p2, t)
    half_det = 0.5 * (omega + f - omega0)
    coupling = (1.0 + f / omega) * g
    da = complex(-0.5 * gamma, half_det) * a - 1j * coupling * b
    db = complex(0.0, -half_det) * b - 1j * coupling * a
    return da, db


@njit(cache=True, inline="always")
def _wnorm(ea, eb, sa, sb):
    return math.sqrt(0.5 * ((abs(ea) / sa) ** 2 + (abs(eb) / sb) ** 2))


@njit(cache=True, nogil=True)
def integrate_block(g, omega, omega0, gamma, kind, p1, p2, a0, grid, rtol, atol, max_steps):
    """Integrate one block from ``grid[0]`` to ``grid[-1]``.

    Returns (a, b, status, t, h, n_accepted, n_rejected); ``a`` and ``b`` hold
    the co-rotating amplitudes on ``grid``. On failure ``t`` and ``h`` give the
    time and step size where the integrator stopped.
    """
    m = grid.shape[0]
    out_a = np.zeros(m, dtype=np.complex128)
    out_b = np.zeros(m, dtype=np.complex128)
    t = grid[0]
    t_end = grid[m - 1]
    a = a0
    b = 0j
    out_a[0] = a
    out_b[0] = b
    gi = 1
    if m == 1:
        return out_a, out_b, STATUS_OK, t, 0.0, 0, 0

    span = t_end - t
    k1a, k1b = _rhs(t, a, b, g, omega, omega0, gamma, kind, p1, p2)

    # initial step guess
    sa = atol + rtol * abs(a)
    sb = atol + rtol * abs(b)
    d0 = _wnorm(a, b, sa, sb)
    d1 = _wnorm(k1a, k1b, sa, sb)
    if d0 < 1e-5 or d1 < 1e-5:
        h0 = 1e-6
    else:
        h0 = 0.01 * d0 / d1
    h0 = min(h0, span)
    f1a, f1b = _rhs(t + h0, a + h0 * k1a, b + h0 * k1b, g, omega, omega0, gamma, kind, p1, p2)
    d2 = _wnorm(f1a - k1a, f1b - k1b, sa, sb) / h0
    dm = max(d1, d2)
    if dm <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / dm) ** 0.2
    h = min(100.0 * h0, h1, span)

    facold = 1e-4
    reject = False
    n_acc = 0
    n_rej = 0
    while True:
        if n_acc + n_rej >= max_steps:
            return out_a, out_b, STATUS_MAX_STEPS, t, h, n_acc, n_rej
        if 0.1 * abs(h) <= abs(t) * UROUND or h <= 1e-14 * max(1.0, span):
            return out_a, out_b, STATUS_STEP_UNDERFLOW, t, h, n_acc, n_rej
        last = False
        if t + 1.01 * h >= t_end:
            h = t_end - t
            last = True

        ya = a + h * A21 * k1a
        yb = b + h * A21 * k1b
        k2a, k2b = _rhs(t + C2 * h, ya, yb, g, omega, omega0, gamma, kind, p1, p2)
        ya = a + h * (A31 * k1a + A32 * k2a)
        yb = b + h * (A31 * k1b + A32 * k2b)
        k3a, k3b = _rhs(t + C3 * h, ya, yb, g, omega, omega0, gamma, kind, p1, p2)
        ya = a + h * (A41 * k1a + A42 * k2a + A43 * k3a)
        yb = b + h * (A41 * k1b + A42 * k2b + A43 * k3b)
        k4a, k4b = _rhs(t + C4 * h, ya, yb, g, omega, omega0, gamma, kind, p1, p2)
        ya = a + h * (A51 * k1a + A52 * k2a + A53 * k3a + A54 * k4a)
        yb = b + h * (A51 * k1b + A52 * k2b + A53 * k3b + A54 * k4b)
        k5a, k5b = _rhs(t + C5 * h, ya, yb, g, omega, omega0, gamma, kind, p1, p2)
        ya = a + h * (A61 * k1a + A62 * k2a + A63 * k3a + A64 * k4a + A65 * k5a)
        yb = b + h * (A61 * k1b + A62 * k2b + A63 * k3b + A64 * k4b + A65 * k5b)
        t_new = t + h
        k6a, k6b = _rhs(t_new, ya, yb, g, omega, omega0, gamma, kind, p1, p2)
        na = a + h * (A71 * k1a + A73 * k3a + A74 * k4a + A75 * k5a + A76 * k6a)
        nb = b + h * (A71 * k1b + A73 * k3b + A74 * k4b + A75 * k5b + A76 * k6b)
        k7a, k7b = _rhs(t_new, na, nb, g, omega, omega0, gamma, kind, p1, p2)

        ea = h * (E1 * k1a + E3 * k3a + E4 * k4a + E5 * k5a + E6 * k6a + E7 * k7a)
        eb = h * (E1 * k1b + E3 * k3b + E4 * k4b + E5 * k5b + E6 * k6b + E7 * k7b)
        sa = atol + rtol * max(abs(a), abs(na))
        sb = atol + rtol * max(abs(b), abs(nb))
        err = _wnorm(ea, eb, sa, sb)

        fac11 = err ** EXPO1
        fac = fac11 / facold ** BETA
        fac = max(FACC2, min(FACC1, fac / SAFE))
        h_new = h / fac

        if err <= 1.0:
            n_acc += 1
            facold = max(err, 1e-4)
            # continuous extension coefficients, only when a grid point is inside the step
            if gi < m and grid[gi] <= t_new:
                dya = na - a
                dyb = nb - b
                bsa = h * k1a - dya
                bsb = h * k1b - dyb
                r4a = dya - h * k7a - bsa
                r4b = dyb - h * k7b - bsb
                r5a = h * (D1 * k1a + D3 * k3a + D4 * k4a + D5 * k5a + D6 * k6a + D7 * k7a)
                r5b = h * (D1 * k1b + D3 * k3b + D4 * k4b + D5 * k5b + D6 * k6b + D7 * k7b)
                while gi < m and grid[gi] <= t_new:
                    if last and gi == m - 1:
                        out_a[gi] = na
                        out_b[gi] = nb
                    else:
                        th = (grid[gi] - t) / h
                        th1 = 1.0 - th
                        out_a[gi] = a + th * (dya + th1 * (bsa + th * (r4a + th1 * r5a)))
                        out_b[gi] = b + th * (dyb + th1 * (bsb + th * (r4b + th1 * r5b)))
                    gi += 1
            a = na
            b = nb
            k1a = k7a
            k1b = k7b
            t = t_new
            if last:
                return out_a, out_b, STATUS_OK, t, h, n_acc, n_rej
            if reject:
                h_new = min(h_new, h)
            reject = False
        else:
            n_rej += 1
            h_new = h / min(FACC1, fac11 / SAFE)
            reject = True
        h = h_new
