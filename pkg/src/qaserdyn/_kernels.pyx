# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled RK4 trajectory kernels.

Mirrors ``qaserdyn._kernels_py`` stage for stage; see that module for the
contract. Selected automatically by ``qaserdyn.backend`` when importable.
"""

from libc.math cimport cos, sin, isfinite

import numpy as np

BACKEND = "compiled"


def rk4_phi(double omega0, double Omega, double delta, double nu_d,
            y0, double t0, double dt, long n_steps):
    """RK4 trajectory of the driven pair in displacement coordinates."""
    cdef long n = n_steps
    times_arr = np.empty(n + 1, dtype=np.float64)
    states_arr = np.empty((n + 1, 4), dtype=np.float64)
    cdef double[::1] times = times_arr
    cdef double[:, ::1] states = states_arr

    cdef double w0sq = omega0 * omega0
    cdef double wcsq = Omega * Omega
    cdef double half = 0.5 * dt
    cdef double sixth = dt / 6.0

    cdef double p1 = y0[0]
    cdef double p2 = y0[1]
    cdef double v1 = y0[2]
    cdef double v2 = y0[3]

    cdef double t, th, t1, drive
    cdef double a1, a2, a3, a4, b1, b2, b3, b4
    cdef double c1, c2, c3, c4, d1, d2, d3, d4
    cdef double q1, q2, u1, u2
    cdef long k

    times[0] = t0
    states[0, 0] = p1
    states[0, 1] = p2
    states[0, 2] = v1
    states[0, 3] = v2
    if not (isfinite(p1) and isfinite(p2) and isfinite(v1) and isfinite(v2)):
        return times_arr, states_arr, 0

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
        if not (isfinite(p1) and isfinite(p2) and isfinite(v1) and isfinite(v2)):
            return times_arr, states_arr, k + 1

    return times_arr, states_arr, -1


cdef inline void _envelope_rhs(double complex a, double complex b, double t,
                               double omega1, double omega2,
                               double c1, double c2, double nu_d, bint keep,
                               double complex *da, double complex *db) noexcept:
    cdef double complex e1m = cos(omega1 * t) - 1j * sin(omega1 * t)
    cdef double complex e2m = cos(omega2 * t) - 1j * sin(omega2 * t)
    cdef double complex s = a * e1m + b * e2m
    cdef double complex ae, be
    if keep:
        ae = a * e1m
        be = b * e2m
        s = s + (ae.real - 1j * ae.imag) + (be.real - 1j * be.imag)
    cdef double f = cos(nu_d * t)
    da[0] = 1j * c1 * f * s * (e1m.real - 1j * e1m.imag)
    db[0] = -1j * c2 * f * s * (e2m.real - 1j * e2m.imag)


def rk4_envelope(double omega1, double omega2, double c1, double c2,
                 double nu_d, a0, b0, double t0, double dt, long n_steps,
                 bint keep_cr):
    """RK4 trajectory of the complex envelope pair (alpha, beta)."""
    cdef long n = n_steps
    times_arr = np.empty(n + 1, dtype=np.float64)
    states_arr = np.empty((n + 1, 2), dtype=np.complex128)
    cdef double[::1] times = times_arr
    cdef double complex[:, ::1] states = states_arr

    cdef double half = 0.5 * dt
    cdef double sixth = dt / 6.0
    cdef double complex a = a0
    cdef double complex b = b0

    cdef double t, th, t1
    cdef double complex ka1, ka2, ka3, ka4, kb1, kb2, kb3, kb4
    cdef long k

    times[0] = t0
    states[0, 0] = a
    states[0, 1] = b
    if not (isfinite(a.real) and isfinite(a.imag)
            and isfinite(b.real) and isfinite(b.imag)):
        return times_arr, states_arr, 0

    for k in range(n):
        t = t0 + k * dt
        th = t + half
        t1 = t + dt

        _envelope_rhs(a, b, t, omega1, omega2, c1, c2, nu_d, keep_cr,
                      &ka1, &kb1)
        _envelope_rhs(a + half * ka1, b + half * kb1, th,
                      omega1, omega2, c1, c2, nu_d, keep_cr, &ka2, &kb2)
        _envelope_rhs(a + half * ka2, b + half * kb2, th,
                      omega1, omega2, c1, c2, nu_d, keep_cr, &ka3, &kb3)
        _envelope_rhs(a + dt * ka3, b + dt * kb3, t1,
                      omega1, omega2, c1, c2, nu_d, keep_cr, &ka4, &kb4)

        a = a + sixth * (ka1 + 2.0 * (ka2 + ka3) + ka4)
        b = b + sixth * (kb1 + 2.0 * (kb2 + kb3) + kb4)

        times[k + 1] = t1
        states[k + 1, 0] = a
        states[k + 1, 1] = b
        if not (isfinite(a.real) and isfinite(a.imag)
                and isfinite(b.real) and isfinite(b.imag)):
            return times_arr, states_arr, k + 1

    return times_arr, states_arr, -1
