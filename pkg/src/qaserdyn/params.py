"""Physical parameters and closed-form rates of the driven coupled-oscillator pair.

Two oscillators of frequency omega0 coupled with strength Omega have normal
modes omega1 = sqrt(omega0^2 - Omega^2) and omega2 = sqrt(omega0^2 + Omega^2).
Modulating the coupling at nu_d close to omega2 - omega1 (combination
resonance) produces cross-mode gain; the closed forms below give the linear
gain g, the mode coupling J and the growth exponent lam = sqrt(g^2 - J^2).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass


class ParameterWarning(UserWarning):
    """Physically questionable but not invalid parameter values."""


@dataclass(frozen=True)
class ModelParams:
    """The four inputs of the model.

    omega0: oscillator frequency (rad/time)
    Omega:  coupling constant (rad/time), 0 < Omega < omega0
    delta:  dimensionless modulation amplitude, >= 0
    nu_d:   drive frequency (rad/time)
    """

    omega0: float
    Omega: float
    delta: float
    nu_d: float

    def __post_init__(self):
        for name in ("omega0", "Omega", "delta", "nu_d"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if self.omega0 <= 0.0:
            raise ValueError(f"omega0 must be positive, got {self.omega0}")
        if self.nu_d <= 0.0:
            raise ValueError(f"nu_d must be positive, got {self.nu_d}")
        if self.delta < 0.0:
            raise ValueError(f"delta must be nonnegative, got {self.delta}")
        if not 0.0 < self.Omega < self.omega0:
            raise ValueError(
                "Omega must satisfy 0 < Omega < omega0 (real normal modes); "
                f"got Omega={self.Omega}, omega0={self.omega0}"
            )
        if self.delta >= 1.0:
            warnings.warn(
                f"delta={self.delta} is outside the weak-modulation regime "
                "(delta << 1); results may not be physically meaningful",
                ParameterWarning,
                stacklevel=2,
            )


@dataclass(frozen=True)
class NormalModes:
    """Normal-mode frequencies, omega1 < omega2."""

    omega1: float
    omega2: float


@dataclass(frozen=True)
class PTParams:
    """Gain/coupling pair of the effective two-mode system.

    g:   linear gain rate (1/time)
    J:   mode-coupling rate (1/time)
    lam: growth exponent sqrt(g^2 - J^2) (1/time)
    """

    g: float
    J: float
    lam: float


def derive_normal_modes(params: ModelParams) -> NormalModes:
    """Normal-mode frequencies sqrt(omega0^2 -+ Omega^2)."""
    w0sq = params.omega0 * params.omega0
    wcsq = params.Omega * params.Omega
    return NormalModes(
        omega1=math.sqrt(w0sq - wcsq),
        omega2=math.sqrt(w0sq + wcsq),
    )


def pt_parameters(params: ModelParams) -> PTParams:
    """Gain g, coupling J and growth exponent lam for the given model.

    Defined by Omega^2 delta / (8 omega1) = J + g and
    Omega^2 delta / (8 omega2) = g - J, which give
    lam = sqrt(g^2 - J^2) = Omega^2 delta / (8 sqrt(omega1 omega2)).
    """
    modes = derive_normal_modes(params)
    drive = params.Omega * params.Omega * params.delta
    g = drive * (modes.omega1 + modes.omega2) / (16.0 * modes.omega1 * modes.omega2)
    coupling = drive * (modes.omega2 - modes.omega1) / (16.0 * modes.omega1 * modes.omega2)
    lam = drive / (8.0 * math.sqrt(modes.omega1 * modes.omega2))
    return PTParams(g=g, J=coupling, lam=lam)


def resonance_detuning(params: ModelParams) -> float:
    """nu_d - (omega2 - omega1); zero at exact combination resonance."""
    modes = derive_normal_modes(params)
    return params.nu_d - (modes.omega2 - modes.omega1)


def resonant_omega0(ratio: float, nu_d: float) -> float:
    """Oscillator frequency placing the combination resonance at nu_d.

    ratio is Omega/omega0. Uses the rationalized form
    omega0 = nu_d (sqrt(1+r^2) + sqrt(1-r^2)) / (2 r^2), equivalent to
    nu_d / (sqrt(1+r^2) - sqrt(1-r^2)) but stable for small ratio.
    """
    if not 0.0 < ratio < 1.0:
        raise ValueError(f"ratio must lie in (0, 1), got {ratio}")
    if nu_d <= 0.0:
        raise ValueError(f"nu_d must be positive, got {nu_d}")
    rsq = ratio * ratio
    return nu_d * (math.sqrt(1.0 + rsq) + math.sqrt(1.0 - rsq)) / (2.0 * rsq)
