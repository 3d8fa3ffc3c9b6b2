#!/usr/bin/env python3
"""Benchmark the compiled trajectory kernels against the pure-Python fallback.

Times the two hot loops (displacement-coordinate RK4 and complex-envelope
RK4) on workloads matching a gain-sweep point and an equivalence check, and
verifies that both backends produce the same trajectories.

Usage:
    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import math
import time

import numpy as np

import qaserdyn._kernels_py as python_kernels
from qaserdyn import ModelParams, derive_normal_modes

try:
    import qaserdyn._kernels as compiled_kernels
except ImportError:
    compiled_kernels = None

PARAMS = ModelParams(omega0=7.93624, Omega=3.96812, delta=0.4, nu_d=2.0)


def phi_workload(kernels, n_steps):
    y0 = np.array([1e-3, 0.0, 0.0, 0.0])
    dt = 2.0 * math.pi / (64.0 * derive_normal_modes(PARAMS).omega2)
    return kernels.rk4_phi(PARAMS.omega0, PARAMS.Omega, PARAMS.delta,
                           PARAMS.nu_d, y0, 0.0, dt, n_steps)


def envelope_workload(kernels, n_steps):
    modes = derive_normal_modes(PARAMS)
    drive = PARAMS.Omega**2 * PARAMS.delta
    dt = (2.0 * math.pi / PARAMS.nu_d) / 256.0
    return kernels.rk4_envelope(
        modes.omega1, modes.omega2,
        drive / (4.0 * modes.omega1), drive / (4.0 * modes.omega2),
        PARAMS.nu_d, 1e-3 + 0j, 1e-3 + 0j, 0.0, dt, n_steps, True,
    )


def best_of(fn, repeat):
    timings = []
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        timings.append(time.perf_counter() - start)
    return min(timings), result


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5,
                        help="timing repetitions (best-of)")
    args = parser.parse_args()

    workloads = [
        ("rk4_phi, 12k steps (one sweep point)", phi_workload, 12_000),
        ("rk4_envelope, 36k steps (equivalence run)", envelope_workload, 36_000),
    ]

    print(f"{'workload':<45} {'python':>10} {'compiled':>10} {'speedup':>9}")
    for label, workload, n_steps in workloads:
        t_py, (times_py, states_py, _) = best_of(
            lambda: workload(python_kernels, n_steps), args.repeat)
        if compiled_kernels is None:
            print(f"{label:<45} {t_py * 1e3:>8.1f}ms {'n/a':>10} {'n/a':>9}")
            continue
        t_c, (times_c, states_c, _) = best_of(
            lambda: workload(compiled_kernels, n_steps), args.repeat)
        scale = np.max(np.abs(states_py))
        max_diff = np.max(np.abs(states_py - states_c)) / scale
        assert max_diff <= 1e-12, f"backend mismatch: {max_diff}"
        print(f"{label:<45} {t_py * 1e3:>8.1f}ms {t_c * 1e3:>8.1f}ms "
              f"{t_py / t_c:>8.1f}x")

    if compiled_kernels is None:
        print("\ncompiled kernels not built; showing fallback timings only")
    else:
        print("\nbackends agree to 1e-12 relative on both workloads")


if __name__ == "__main__":
    main()
