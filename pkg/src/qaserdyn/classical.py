"""Classical dynamics of the driven pair in its three representations.

Displacement coordinates (phi1, phi2), sum/difference coordinates (X, Y),
and complex slowly-varying envelopes (alpha, beta), with the exact algebraic
maps between them. The envelope equations optionally retain the
counter-rotating (conjugate) terms, in which case they are mathematically
equivalent to the displacement-coordinate equations; dropping them gives the
rotating-wave approximation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import backend
from .ode import NonFiniteStateError, TimeGrid, TimeSeries
from .params import ModelParams, NormalModes, derive_normal_modes

# Default seed displacement for gain runs: small and asymmetric so both
# normal modes are excited; fitted rates are seed-independent past the
# transient.
DEFAULT_SEED_AMPLITUDE = 1e-3

# Default steps: 64 samples per fast period for displacement-coordinate
# runs, 256 samples per drive period for envelope runs.
PHI_STEPS_PER_PERIOD = 64
ENVELOPE_STEPS_PER_DRIVE_PERIOD = 256


@dataclass(frozen=True)
class OscillatorState:
    """Displacements and velocities of the two oscillators."""

    phi1: float
    phi2: float
    dphi1: float
    dphi2: float

    def as_array(self) -> np.ndarray:
        return np.array([self.phi1, self.phi2, self.dphi1, self.dphi2])

    @classmethod
    def from_array(cls, y) -> "OscillatorState":
        return cls(float(y[0]), float(y[1]), float(y[2]), float(y[3]))


@dataclass(frozen=True)
class XYState:
    """Sum/difference coordinates X = phi1 + phi2, Y = phi1 - phi2."""

    X: float
    Y: float
    dX: float
    dY: float


@dataclass(frozen=True)
class EnvelopeState:
    """Complex slowly-varying envelopes of the two normal modes."""

    alpha: complex
    beta: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.alpha, self.beta], dtype=np.complex128)


def seed_state(amplitude: float = DEFAULT_SEED_AMPLITUDE) -> OscillatorState:
    """Standard initial condition for gain runs: phi1 displaced, rest zero."""
    return OscillatorState(phi1=amplitude, phi2=0.0, dphi1=0.0, dphi2=0.0)


def default_phi_dt(params: ModelParams) -> float:
    modes = derive_normal_modes(params)
    return 2.0 * math.pi / (PHI_STEPS_PER_PERIOD * modes.omega2)


def default_envelope_dt(params: ModelParams) -> float:
    return (2.0 * math.pi / params.nu_d) / ENVELOPE_STEPS_PER_DRIVE_PERIOD


def rhs_phi(state: OscillatorState, t: float, params: ModelParams) -> OscillatorState:
    """Time derivative of the displacement-coordinate state."""
    w0sq = params.omega0 * params.omega0
    wcsq = params.Omega * params.Omega
    drive = wcsq * (1.0 + params.delta * math.cos(params.nu_d * t))
    return OscillatorState(
        phi1=state.dphi1,
        phi2=state.dphi2,
        dphi1=-w0sq * state.phi1 + wcsq * state.phi2,
        dphi2=-w0sq * state.phi2 + drive * state.phi1,
    )


def phi_rhs_array(params: ModelParams) -> Callable[[np.ndarray, float], np.ndarray]:
    """Array-valued displacement-coordinate RHS for the generic integrator."""
    w0sq = params.omega0 * params.omega0
    wcsq = params.Omega * params.Omega
    delta = params.delta
    nu_d = params.nu_d

    def rhs(y: np.ndarray, t: float) -> np.ndarray:
        drive = wcsq * (1.0 + delta * math.cos(nu_d * t))
        return np.array([
            y[2],
            y[3],
            -w0sq * y[0] + wcsq * y[1],
            -w0sq * y[1] + drive * y[0],
        ])

    return rhs


def phi_to_xy(state: OscillatorState) -> XYState:
    return XYState(
        X=state.phi1 + state.phi2,
        Y=state.phi1 - state.phi2,
        dX=state.dphi1 + state.dphi2,
        dY=state.dphi1 - state.dphi2,
    )


def xy_to_phi(state: XYState) -> OscillatorState:
    return OscillatorState(
        phi1=0.5 * (state.X + state.Y),
        phi2=0.5 * (state.X - state.Y),
        dphi1=0.5 * (state.dX + state.dY),
        dphi2=0.5 * (state.dX - state.dY),
    )


def xy_to_envelope(state: XYState, t: float, modes: NormalModes) -> EnvelopeState:
    """alpha = (X + i dX/omega1) e^{i omega1 t}, beta likewise with omega2."""
    z1 = complex(state.X, state.dX / modes.omega1)
    z2 = complex(state.Y, state.dY / modes.omega2)
    return EnvelopeState(
        alpha=z1 * cmath.exp(1j * modes.omega1 * t),
        beta=z2 * cmath.exp(1j * modes.omega2 * t),
    )


def envelope_to_xy(state: EnvelopeState, t: float, modes: NormalModes) -> XYState:
    z1 = state.alpha * cmath.exp(-1j * modes.omega1 * t)
    z2 = state.beta * cmath.exp(-1j * modes.omega2 * t)
    return XYState(
        X=z1.real,
        Y=z2.real,
        dX=modes.omega1 * z1.imag,
        dY=modes.omega2 * z2.imag,
    )


def phi_to_envelope(state: OscillatorState, t: float, modes: NormalModes) -> EnvelopeState:
    return xy_to_envelope(phi_to_xy(state), t, modes)


def rhs_envelope(
    state: EnvelopeState,
    t: float,
    params: ModelParams,
    keep_counter_rotating: bool,
) -> EnvelopeState:
    """Time derivative of the envelope pair.

    With ``keep_counter_rotating`` the conjugate terms are retained and the
    system is exactly equivalent to the displacement-coordinate dynamics;
    without them it is the rotating-wave approximation.
    """
    modes = derive_normal_modes(params)
    drive = params.Omega * params.Omega * params.delta
    c1 = drive / (4.0 * modes.omega1)
    c2 = drive / (4.0 * modes.omega2)
    e1m = cmath.exp(-1j * modes.omega1 * t)
    e2m = cmath.exp(-1j * modes.omega2 * t)
    s = state.alpha * e1m + state.beta * e2m
    if keep_counter_rotating:
        s = s + (state.alpha * e1m).conjugate() + (state.beta * e2m).conjugate()
    f = math.cos(params.nu_d * t)
    return EnvelopeState(
        alpha=1j * c1 * f * s * e1m.conjugate(),
        beta=-1j * c2 * f * s * e2m.conjugate(),
    )


def envelope_rhs_array(
    params: ModelParams, keep_counter_rotating: bool
) -> Callable[[np.ndarray, float], np.ndarray]:
    """Array-valued envelope RHS (complex pair) for the generic integrator."""
    modes = derive_normal_modes(params)
    drive = params.Omega * params.Omega * params.delta
    c1 = drive / (4.0 * modes.omega1)
    c2 = drive / (4.0 * modes.omega2)
    omega1, omega2 = modes.omega1, modes.omega2
    nu_d = params.nu_d
    keep = bool(keep_counter_rotating)

    def rhs(z: np.ndarray, t: float) -> np.ndarray:
        e1m = cmath.exp(-1j * omega1 * t)
        e2m = cmath.exp(-1j * omega2 * t)
        s = z[0] * e1m + z[1] * e2m
        if keep:
            s = s + (z[0] * e1m).conjugate() + (z[1] * e2m).conjugate()
        f = math.cos(nu_d * t)
        return np.array(
            [1j * c1 * f * s * e1m.conjugate(), -1j * c2 * f * s * e2m.conjugate()],
            dtype=np.complex128,
        )

    return rhs


def _run_phi_kernel(
    params: ModelParams, initial: OscillatorState, grid: TimeGrid
) -> tuple[np.ndarray, np.ndarray]:
    times, states, bad = backend.rk4_phi(
        params.omega0, params.Omega, params.delta, params.nu_d,
        initial.as_array(), grid.t_start, grid.step, grid.n_steps,
    )
    if bad >= 0:
        raise NonFiniteStateError(times[bad])
    return times, states


def simulate_phi(
    params: ModelParams, initial: OscillatorState, grid: TimeGrid
) -> TimeSeries:
    """Raw displacement-coordinate trajectory (phi1, phi2, dphi1, dphi2)."""
    times, states = _run_phi_kernel(params, initial, grid)
    return TimeSeries(times, states, ("phi1", "phi2", "dphi1", "dphi2"))


def trajectory_columns(
    times: np.ndarray, states: np.ndarray, params: ModelParams
) -> TimeSeries:
    """Derived-representation columns of a raw displacement trajectory."""
    modes = derive_normal_modes(params)
    phi1 = states[:, 0]
    phi2 = states[:, 1]
    dphi1 = states[:, 2]
    dphi2 = states[:, 3]
    x = phi1 + phi2
    y = phi1 - phi2
    dx = dphi1 + dphi2
    dy = dphi1 - dphi2
    z1 = x + 1j * dx / modes.omega1
    z2 = y + 1j * dy / modes.omega2
    alpha = z1 * np.exp(1j * modes.omega1 * times)
    beta = z2 * np.exp(1j * modes.omega2 * times)
    values = np.column_stack([
        phi1, phi2, x, y,
        alpha.real, alpha.imag, beta.real, beta.imag,
        np.abs(alpha), np.abs(beta),
    ])
    labels = (
        "phi1", "phi2", "X", "Y",
        "re_alpha", "im_alpha", "re_beta", "im_beta",
        "abs_alpha", "abs_beta",
    )
    return TimeSeries(times, values, labels)


def simulate_oscillators(
    params: ModelParams, initial: OscillatorState, grid: TimeGrid
) -> TimeSeries:
    """Displacement trajectory with all derived representation columns."""
    times, states = _run_phi_kernel(params, initial, grid)
    return trajectory_columns(times, states, params)


def simulate_envelope(
    params: ModelParams,
    initial: EnvelopeState,
    grid: TimeGrid,
    keep_counter_rotating: bool,
) -> TimeSeries:
    """Envelope trajectory (re/im/abs columns for alpha and beta)."""
    modes = derive_normal_modes(params)
    drive = params.Omega * params.Omega * params.delta
    times, states, bad = backend.rk4_envelope(
        modes.omega1, modes.omega2,
        drive / (4.0 * modes.omega1), drive / (4.0 * modes.omega2),
        params.nu_d, initial.alpha, initial.beta,
        grid.t_start, grid.step, grid.n_steps, keep_counter_rotating,
    )
    if bad >= 0:
        raise NonFiniteStateError(times[bad])
    alpha = states[:, 0]
    beta = states[:, 1]
    values = np.column_stack([
        alpha.real, alpha.imag, beta.real, beta.imag,
        np.abs(alpha), np.abs(beta),
    ])
    labels = ("re_alpha", "im_alpha", "re_beta", "im_beta", "abs_alpha", "abs_beta")
    return TimeSeries(times, values, labels)
