"""Dynamics of two parametrically coupled oscillators at combination resonance.

The library covers the model end to end: direct integration of the
displacement-coordinate equations, the sum/difference and complex-envelope
reductions, the truncated drive-harmonic (Floquet) component system, the
PT-symmetry structure of the effective two-mode Hamiltonian, and
quantum-noise moment propagation showing exponential growth from vacuum.
A `qaserdyn` CLI exposes simulations, sweeps and the invariant check suite.
"""

__version__ = "1.0.0"

from .analysis import (
    FitFailure,
    GainEstimate,
    SweepResult,
    SweepRow,
    fit_envelope_rate,
    fit_exponential_rate,
    sweep_gain,
)
from .backend import backend_name
from .checks import check_names, run_check_suite
from .classical import (
    EnvelopeState,
    OscillatorState,
    XYState,
    envelope_to_xy,
    phi_to_envelope,
    phi_to_xy,
    rhs_envelope,
    rhs_phi,
    seed_state,
    simulate_envelope,
    simulate_oscillators,
    simulate_phi,
    xy_to_envelope,
    xy_to_phi,
)
from .floquet import (
    FloquetMatrix,
    FloquetState,
    build_floquet_matrix,
    growth_rate,
    integrate_components,
    reconstruct_envelope,
    reduce_base,
)
from .ode import (
    NonFiniteStateError,
    TimeGrid,
    TimeSeries,
    convergence_check,
    integrate,
)
from .params import (
    ModelParams,
    NormalModes,
    ParameterWarning,
    PTParams,
    derive_normal_modes,
    pt_parameters,
    resonance_detuning,
    resonant_omega0,
)
from .ptsym import (
    EffectiveHamiltonian,
    ExtendedPTReport,
    PhaseClassification,
    ab_inverse,
    ab_transform,
    build_h_eff,
    eigenvalues_h_eff,
    extended_pt_report,
    is_pt_symmetric,
    parity_operator,
)
from .quantum import (
    MomentSet,
    NoiseModel,
    SpontaneousCurves,
    closed_form_ab,
    closed_form_alpha_beta,
    integrate_moments,
    moment_rhs,
    moments_to_alphabeta,
    vacuum_comparison,
    vacuum_growth_curve,
)

__all__ = [name for name in dir() if not name.startswith("_")]
