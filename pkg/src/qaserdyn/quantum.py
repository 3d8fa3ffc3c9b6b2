"""Quantum-noise moment propagation and closed-form vacuum growth.

Quantizing the gain/loss pair (a, b) adds delta-correlated noise operators:
<f_a^dag(t) f_a(t')> = 2g delta(t-t') (gain mode) and
<f_b(t) f_b^dag(t')> = 2g delta(t-t') (loss mode), all other a/b
correlations vanishing. The second moments n_a = <a^dag a>, n_b = <b^dag b>
and cross = <a^dag b> then close:

    d(n_a)/dt  =  2g n_a - 2J Re(cross) + 2g
    d(n_b)/dt  = -2g n_b + 2J Re(cross)
    d(cross)/dt = J (n_a - n_b)

Starting from vacuum, occupations grow exponentially at 2 lambda with
lambda = sqrt(g^2 - J^2); the closed forms below evaluate the analytic
solutions. The base-component occupations S_alpha, S_beta follow from the
inverse mode mixing. The printed closed form for S_alpha/S_beta carries a
constant factor 2 relative to direct moment propagation (a known
convention discrepancy); both routes are computed and their ratio reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ode import TimeGrid, TimeSeries, integrate
from .params import ModelParams, PTParams, derive_normal_modes, pt_parameters


@dataclass(frozen=True)
class NoiseModel:
    """Delta-correlation coefficients of the quantum noise operators.

    d_aa: <f_a^dag f_a> coefficient (= 2g); d_bb: <f_b f_b^dag> coefficient
    (= 2g); c: magnitude of every nonzero correlation in the rotated
    (f_alpha, f_beta) basis, (omega1+omega2) Omega^2 delta / (16 omega1
    omega2), which equals g identically.
    """

    d_aa: float
    d_bb: float
    c: float

    @classmethod
    def from_params(cls, params: ModelParams) -> "NoiseModel":
        modes = derive_normal_modes(params)
        g = pt_parameters(params).g
        c = (
            (modes.omega1 + modes.omega2)
            * params.Omega * params.Omega * params.delta
            / (16.0 * modes.omega1 * modes.omega2)
        )
        return cls(d_aa=2.0 * g, d_bb=2.0 * g, c=c)


@dataclass(frozen=True)
class MomentSet:
    """Closed set of second moments of the gain/loss mode pair."""

    n_a: float
    n_b: float
    cross: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.n_a, self.n_b, self.cross.real, self.cross.imag])

    @classmethod
    def from_array(cls, y) -> "MomentSet":
        return cls(n_a=float(y[0]), n_b=float(y[1]), cross=complex(y[2], y[3]))


VACUUM = MomentSet(n_a=0.0, n_b=0.0, cross=0j)


@dataclass(frozen=True)
class SpontaneousCurves:
    """Base-component occupations grown from vacuum."""

    s_alpha: np.ndarray
    s_beta: np.ndarray


def moment_rhs(m: MomentSet, pt: PTParams) -> MomentSet:
    """Time derivative of the moment set; the +2g term is the noise source."""
    g, J = pt.g, pt.J
    re_cross = m.cross.real
    return MomentSet(
        n_a=2.0 * g * m.n_a - 2.0 * J * re_cross + 2.0 * g,
        n_b=-2.0 * g * m.n_b + 2.0 * J * re_cross,
        cross=complex(J * (m.n_a - m.n_b), 0.0),
    )


def _require_broken(pt: PTParams) -> float:
    if pt.g <= pt.J:
        raise ValueError(
            f"closed forms require g > J (broken phase), got g={pt.g}, J={pt.J}"
        )
    return math.sqrt(pt.g * pt.g - pt.J * pt.J)


def closed_form_ab(pt: PTParams, t) -> tuple[np.ndarray, np.ndarray]:
    """Analytic vacuum-grown occupations of the gain and loss modes.

    n_a = (J^2 g / lam^2) [ (g/J^2)(cosh 2 lam t - 1)
                            + ((lam^2+g^2)/(2 lam J^2)) sinh 2 lam t - t ]
    n_b = (J^2 g / lam^2) [ sinh(2 lam t)/(2 lam) - t ]

    Broken phase only (g > J). Accepts scalar or array t.
    """
    lam = _require_broken(pt)
    g, J = pt.g, pt.J
    t = np.asarray(t, dtype=np.float64)
    cosh = np.cosh(2.0 * lam * t)
    sinh = np.sinh(2.0 * lam * t)
    pref = J * J * g / (lam * lam)
    n_a = pref * (
        (g / (J * J)) * (cosh - 1.0)
        + ((lam * lam + g * g) / (2.0 * lam * J * J)) * sinh
        - t
    )
    n_b = pref * (sinh / (2.0 * lam) - t)
    return n_a, n_b


def closed_form_alpha_beta(params: ModelParams, t) -> SpontaneousCurves:
    """Analytic vacuum-grown base-component occupations.

    Evaluates the printed closed forms with lam = Omega^2 delta /
    (8 sqrt(omega1 omega2)); note these carry a constant factor 2 relative
    to moment propagation (see module docstring). Broken phase only.
    """
    pt = pt_parameters(params)
    lam = _require_broken(pt)
    modes = derive_normal_modes(params)
    w1, w2 = modes.omega1, modes.omega2
    drive = params.Omega * params.Omega * params.delta
    t = np.asarray(t, dtype=np.float64)
    cosh = np.cosh(2.0 * lam * t) - 1.0
    sinh = np.sinh(2.0 * lam * t)
    root = math.sqrt(w1 * w2)
    bracket_alpha = (w1 - w2) * drive * t + 8.0 * w1 * w2 * cosh \
        + 4.0 * root * (w1 + w2) * sinh
    bracket_beta = (w2 - w1) * drive * t + 8.0 * w1 * w2 * cosh \
        + 4.0 * root * (w1 + w2) * sinh
    return SpontaneousCurves(
        s_alpha=(w1 + w2) / (16.0 * w1 * w1 * w2) * bracket_alpha,
        s_beta=(w1 + w2) / (16.0 * w1 * w2 * w2) * bracket_beta,
    )


def moments_to_alphabeta(m: MomentSet) -> tuple[float, float]:
    """Base-component occupations from a/b moments via the inverse mixing.

    S_alpha = (n_a + n_b + 2 Re cross)/2, S_beta = (n_a + n_b - 2 Re cross)/2;
    their sum is always n_a + n_b.
    """
    total = m.n_a + m.n_b
    twice_re = 2.0 * m.cross.real
    return 0.5 * (total + twice_re), 0.5 * (total - twice_re)


def integrate_moments(pt: PTParams, grid: TimeGrid, initial: MomentSet = VACUUM) -> TimeSeries:
    """RK4 trajectory of the moment set; columns n_a, n_b, re/im cross."""
    g, J = pt.g, pt.J

    def rhs(y: np.ndarray, t: float) -> np.ndarray:
        return np.array([
            2.0 * g * y[0] - 2.0 * J * y[2] + 2.0 * g,
            -2.0 * g * y[1] + 2.0 * J * y[2],
            J * (y[0] - y[1]),
            0.0,
        ])

    return integrate(
        rhs, initial.as_array(), grid,
        labels=("n_a", "n_b", "re_cross", "im_cross"),
    )


def vacuum_growth_curve(
    params: ModelParams, grid: TimeGrid, method: str = "closed_form"
) -> TimeSeries:
    """Vacuum-grown occupations (S_alpha, S_beta, n_a, n_b) over the grid.

    method 'closed_form' samples the analytic solutions; 'moment_ode'
    integrates the moment equations from vacuum and maps through the
    inverse mode mixing.
    """
    pt = pt_parameters(params)
    if method == "closed_form":
        times = grid.times()
        if params.delta == 0.0:
            # no drive: every moment stays at vacuum
            zeros = np.zeros_like(times)
            s_alpha = s_beta = n_a = n_b = zeros
        else:
            n_a, n_b = closed_form_ab(pt, times)
            curves = closed_form_alpha_beta(params, times)
            s_alpha, s_beta = curves.s_alpha, curves.s_beta
    elif method == "moment_ode":
        series = integrate_moments(pt, grid)
        times = series.times
        n_a = series.column("n_a")
        n_b = series.column("n_b")
        total = n_a + n_b
        twice_re = 2.0 * series.column("re_cross")
        s_alpha = 0.5 * (total + twice_re)
        s_beta = 0.5 * (total - twice_re)
    else:
        raise ValueError(
            f"method must be 'closed_form' or 'moment_ode', got {method!r}"
        )
    values = np.column_stack([s_alpha, s_beta, n_a, n_b])
    return TimeSeries(times, values, ("S_alpha", "S_beta", "n_a", "n_b"))


def vacuum_comparison(params: ModelParams, grid: TimeGrid) -> TimeSeries:
    """Both methods side by side plus their pointwise S_alpha ratio.

    Columns: S_alpha_closed, S_beta_closed, S_alpha_ode, S_beta_ode, n_a,
    n_b, ratio_alpha. n_a/n_b carry the moment-ODE values; ratio_alpha is
    S_alpha_closed / S_alpha_ode (NaN where the denominator vanishes, i.e.
    at t = 0).
    """
    closed = vacuum_growth_curve(params, grid, "closed_form")
    ode = vacuum_growth_curve(params, grid, "moment_ode")
    s_alpha_closed = closed.column("S_alpha")
    s_alpha_ode = ode.column("S_alpha")
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(
            s_alpha_ode != 0.0, s_alpha_closed / s_alpha_ode, math.nan
        )
    values = np.column_stack([
        s_alpha_closed, closed.column("S_beta"),
        s_alpha_ode, ode.column("S_beta"),
        ode.column("n_a"), ode.column("n_b"),
        ratio,
    ])
    labels = (
        "S_alpha_closed", "S_beta_closed", "S_alpha_ode", "S_beta_ode",
        "n_a", "n_b", "ratio_alpha",
    )
    return TimeSeries(closed.times, values, labels)
