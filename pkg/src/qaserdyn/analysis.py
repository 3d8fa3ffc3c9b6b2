"""Exponential-rate fitting and the oscillator-frequency gain sweep.

Growth rates are extracted by ordinary least squares on (t, ln value) inside
a fit window. Sweep runs integrate the displacement-coordinate dynamics from
a small seed and fit the slope of half the log envelope energy
E = |alpha|^2 + |beta|^2, which removes the fast carriers and averages the
drive-period beating.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import backend
from .ode import NonFiniteStateError, TimeGrid, TimeSeries
from .params import ModelParams, derive_normal_modes, pt_parameters, resonance_detuning
from .classical import default_phi_dt, seed_state

# Points detuned from resonance by more than this grow non-monotonically
# (beats); their fit window is stretched to average over beat periods.
WIDEN_DETUNING = 0.05
WIDENED_WINDOW_SPAN = 100.0

MIN_FIT_SAMPLES = 10


class FitFailure(RuntimeError):
    """A rate fit could not be performed or did not converge."""


@dataclass(frozen=True)
class GainEstimate:
    """Least-squares exponential rate over a window of a time series."""

    rate: float
    intercept: float
    residual: float
    window: tuple[float, float]
    n_samples: int


@dataclass(frozen=True)
class SweepRow:
    omega0: float
    fitted_rate: float
    analytic_lambda: float
    detuning: float
    residual: float


@dataclass(frozen=True)
class SweepResult:
    """Per-frequency fitted rates; rows are strictly increasing in omega0."""

    rows: tuple[SweepRow, ...]

    CSV_HEADER = "omega0,fitted_rate,analytic_lambda,detuning,residual"

    def peak(self) -> SweepRow:
        """Row with the largest finite fitted rate."""
        finite = [r for r in self.rows if math.isfinite(r.fitted_rate)]
        if not finite:
            raise FitFailure("no sweep point produced a finite fitted rate")
        return max(finite, key=lambda r: r.fitted_rate)

    def to_csv(self, fh) -> None:
        from .serialize import fmt_float

        fh.write(self.CSV_HEADER + "\n")
        for r in self.rows:
            fh.write(",".join(fmt_float(v) for v in (
                r.omega0, r.fitted_rate, r.analytic_lambda, r.detuning, r.residual,
            )) + "\n")


def fit_exponential_rate(
    series: TimeSeries, column: str, window: tuple[float, float]
) -> GainEstimate:
    """OLS slope of ln(column) over t in [window[0], window[1]].

    Requires at least MIN_FIT_SAMPLES strictly positive samples inside the
    window; violations raise FitFailure. Deterministic.
    """
    lo, hi = float(window[0]), float(window[1])
    if not lo < hi:
        raise ValueError(f"fit window must satisfy lo < hi, got ({lo}, {hi})")
    mask = (series.times >= lo) & (series.times <= hi)
    t = series.times[mask]
    v = np.asarray(series.column(column)[mask], dtype=np.float64)
    if t.size < MIN_FIT_SAMPLES:
        raise FitFailure(
            f"only {t.size} samples in window [{lo}, {hi}] "
            f"(need >= {MIN_FIT_SAMPLES})"
        )
    if np.any(v <= 0.0) or not np.all(np.isfinite(v)):
        raise FitFailure(
            f"column {column!r} must be strictly positive and finite "
            f"inside the fit window"
        )
    logv = np.log(v)
    t_mean = t.mean()
    y_mean = logv.mean()
    dt = t - t_mean
    denom = float(np.dot(dt, dt))
    slope = float(np.dot(dt, logv - y_mean) / denom)
    intercept = float(y_mean - slope * t_mean)
    resid = logv - (intercept + slope * t)
    residual = float(np.sqrt(np.mean(resid * resid)))
    return GainEstimate(
        rate=slope,
        intercept=intercept,
        residual=residual,
        window=(lo, hi),
        n_samples=int(t.size),
    )


def envelope_energy(times, states, params: ModelParams) -> np.ndarray:
    """E = |alpha|^2 + |beta|^2 from a raw displacement trajectory."""
    modes = derive_normal_modes(params)
    x = states[:, 0] + states[:, 1]
    y = states[:, 0] - states[:, 1]
    dx = states[:, 2] + states[:, 3]
    dy = states[:, 2] - states[:, 3]
    return x * x + (dx / modes.omega1) ** 2 + y * y + (dy / modes.omega2) ** 2


def fit_envelope_rate(
    params: ModelParams,
    window: tuple[float, float],
    seed_amplitude: float,
    dt: float | None = None,
) -> GainEstimate:
    """Integrate from the standard seed and fit the envelope-energy rate.

    The fitted rate is the slope of (1/2) ln E, directly comparable to the
    analytic growth exponent.
    """
    if dt is None:
        dt = default_phi_dt(params)
    grid = TimeGrid(0.0, window[1], dt)
    initial = seed_state(seed_amplitude)
    times, states, bad = backend.rk4_phi(
        params.omega0, params.Omega, params.delta, params.nu_d,
        initial.as_array(), grid.t_start, grid.step, grid.n_steps,
    )
    if bad >= 0:
        raise NonFiniteStateError(times[bad])
    amp = np.sqrt(envelope_energy(times, states, params))
    series = TimeSeries(times, amp[:, None], ("amp",))
    return fit_exponential_rate(series, "amp", window)


def _sweep_point(args) -> SweepRow:
    omega0, ratio, delta, nu_d, seed_amplitude, window = args
    params = ModelParams(omega0=omega0, Omega=ratio * omega0, delta=delta, nu_d=nu_d)
    detuning = resonance_detuning(params)
    lam = pt_parameters(params).lam
    if abs(detuning) > WIDEN_DETUNING:
        window = (window[0], window[0] + WIDENED_WINDOW_SPAN)
    try:
        estimate = fit_envelope_rate(params, window, seed_amplitude=seed_amplitude)
        rate, residual = estimate.rate, estimate.residual
    except (FitFailure, NonFiniteStateError):
        rate, residual = math.nan, math.nan
    return SweepRow(
        omega0=omega0,
        fitted_rate=rate,
        analytic_lambda=lam,
        detuning=detuning,
        residual=residual,
    )


def sweep_gain(
    omega0_range: tuple[float, float, int],
    ratio: float,
    delta: float,
    nu_d: float,
    seed: float = 1e-3,
    window: tuple[float, float] = (20.0, 80.0),
    jobs: int = 1,
) -> SweepResult:
    """Fitted gain vs oscillator frequency at fixed Omega/omega0 ratio.

    Each point integrates from the standard seed (phi1 = ``seed``) and fits
    the envelope-energy rate; per-point fit failures are recorded as NaN
    rows and the sweep continues. Results are assembled in omega0 order
    regardless of ``jobs``.
    """
    lo, hi, steps = omega0_range
    if not (0.0 < lo < hi and steps >= 2):
        raise ValueError(f"need 0 < lo < hi and steps >= 2, got {omega0_range}")
    if not 0.0 < ratio < 1.0:
        raise ValueError(f"ratio must lie in (0, 1), got {ratio}")
    omega0s = np.linspace(lo, hi, int(steps))
    work = [(float(w), ratio, delta, nu_d, seed, window) for w in omega0s]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_point, work))
    else:
        rows = [_sweep_point(w) for w in work]
    return SweepResult(rows=tuple(rows))
