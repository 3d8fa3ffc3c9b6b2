"""Pure-Python RK4 trajectory kernels.

Fallback implementations of the hot loops; the compiled module
``qaserdyn._kernels`` mirrors these exactly (same arithmetic, same stage
ordering) so the two backends agree to rounding.

Both kernels return ``(times, states, bad_index)`` where ``bad_index`` is -1
for a clean run or the sample index of the first non-finite state; callers
translate that into an error with the offending time.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND = "python"


def rk4_phi(omega0, Omega, delta, nu_d, y0, t0, dt, n_steps):
    """RK4 trajectory of the driven pair in displacement coordinates.

    State layout: (phi1, phi2, dphi1, dphi2). ``states`` has one row per
    sample including the initial condition; sample k sits at t0 + k*dt.
    """
    n = int(n_steps)
    times = np.empty(n + 1, dtype=np.float64)
    states = np.empty((n + 1, 4), dtype=np.float64)

    w0sq = omega0 * omega0
    wcsq = Omega * Omega
    cos = math.cos
    half = 0.5 * dt
    sixth = dt / 6.0

    p1 = float(y0[0])
    p2 = float(y0[1])
    v1 = float(y0[2])
    v2 = float(y0[3])

    times[0] = t0
    states[0, 0] = p1
    states[0, 1] = p2
    states[0, 2] = v1
    states[0, 3] = v2
    if not (math.isfinite(p1) and math.isfinite(p2)
            and math.isfinite(v1) and math.isfinite(v2)):
        return times, states, 0

    for k in range(n):
        t = t0 + k * dt
        th = t + half
        t1 = t + dt

        drive = wcsq * (1.0 + delta * cos(nu_d * t))
        a1 = v1
        a2 = v2
        a3 = -w0sq * p1 + wcsq * p2
        a4 = -w0sq * p2 + drive * p1

        q1 = p1 + half * a1
        q2 = p2 + half * a2
        u1 = v1 + half * a3
        u2 = v2 + half * a4
        drive = wcsq * (1.0 + delta * cos(nu_d * th))
        b1 = u1
        b2 = u2
        b3 = -w0sq * q1 + wcsq * q2
        b4 = -w0sq * q2 + drive * q1

        q1 = p1 + half * b1
        q2 = p2 + half * b2
        u1 = v1 + half * b3
        u2 = v2 + half * b4
        c1 = u1
        c2 = u2
        c3 = -w0sq * q1 + wcsq * q2
        c4 = -w0sq * q2 + drive * q1

        q1 = p1 + dt * c1
        q2 = p2 + dt * c2
        u1 = v1 + dt * c3
        u2 = v2 + dt * c4
        drive = wcsq * (1.0 + delta * cos(nu_d * t1))
        d1 = u1
        d2 = u2
        d3 = -w0sq * q1 + wcsq * q2
        d4 = -w0sq * q2 + drive * q1

        p1 += sixth * (a1 + 2.0 * (b1 + c1) + d1)
        p2 += sixth * (a2 + 2.0 * (b2 + c2) + d2)
        v1 += sixth * (a3 + 2.0 * (b3 + c3) + d3)
        v2 += sixth * (a4 + 2.0 * (b4 + c4) + d4)

        times[k + 1] = t1
        states[k + 1, 0] = p1
        states[k + 1, 1] = p2
        states[k + 1, 2] = v1
        states[k + 1, 3] = v2
        if not (math.isfinite(p1) and math.isfinite(p2)
                and math.isfinite(v1) and math.isfinite(v2)):
            return times, states, k + 1

    return times, states, -1


def _envelope_rhs(a, b, t, omega1, omega2, c1, c2, nu_d, keep_cr):
    e1m = complex(math.cos(omega1 * t), -math.sin(omega1 * t))
    e2m = complex(math.cos(omega2 * t), -math.sin(omega2 * t))
    s = a * e1m + b * e2m
    if keep_cr:
        s = s + (a * e1m).conjugate() + (b * e2m).conjugate()
    f = math.cos(nu_d * t)
    da = 1j * c1 * f * s * e1m.conjugate()
    db = -1j * c2 * f * s * e2m.conjugate()
    return da, db


def rk4_envelope(omega1, omega2, c1, c2, nu_d, a0, b0, t0, dt, n_steps, keep_cr):
    """RK4 trajectory of the complex envelope pair (alpha, beta).

    c1 and c2 are the drive coefficients Omega^2 delta / (4 omega1) and
    Omega^2 delta / (4 omega2). With ``keep_cr`` true the conjugate
    (counter-rotating) terms are retained, making the system exactly
    equivalent to the displacement-coordinate dynamics.
    """
    n = int(n_steps)
    times = np.empty(n + 1, dtype=np.float64)
    states = np.empty((n + 1, 2), dtype=np.complex128)

    keep = bool(keep_cr)
    half = 0.5 * dt
    sixth = dt / 6.0
    a = complex(a0)
    b = complex(b0)

    times[0] = t0
    states[0, 0] = a
    states[0, 1] = b
    if not (math.isfinite(a.real) and math.isfinite(a.imag)
            and math.isfinite(b.real) and math.isfinite(b.imag)):
        return times, states, 0

    for k in range(n):
        t = t0 + k * dt
        th = t + half
        t1 = t + dt

        ka1, kb1 = _envelope_rhs(a, b, t, omega1, omega2, c1, c2, nu_d, keep)
        ka2, kb2 = _envelope_rhs(a + half * ka1, b + half * kb1, th,
                                 omega1, omega2, c1, c2, nu_d, keep)
        ka3, kb3 = _envelope_rhs(a + half * ka2, b + half * kb2, th,
                                 omega1, omega2, c1, c2, nu_d, keep)
        ka4, kb4 = _envelope_rhs(a + dt * ka3, b + dt * kb3, t1,
                                 omega1, omega2, c1, c2, nu_d, keep)

        a = a + sixth * (ka1 + 2.0 * (ka2 + ka3) + ka4)
        b = b + sixth * (kb1 + 2.0 * (kb2 + kb3) + kb4)

        times[k + 1] = t1
        states[k + 1, 0] = a
        states[k + 1, 1] = b
        if not (math.isfinite(a.real) and math.isfinite(a.imag)
                and math.isfinite(b.real) and math.isfinite(b.imag)):
            return times, states, k + 1

    return times, states, -1
