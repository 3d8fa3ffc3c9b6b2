"""Cross-module invariant suite behind the `check` subcommand.

Each check is a named, deterministic pass/fail computation; the suite
returns a machine-readable report whose bytes are identical across reruns.
Golden values are regression anchors recorded from this implementation;
drifting outside their bands flags a behavioral change even when looser
physical tolerances would still pass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import backend
from .analysis import fit_envelope_rate, fit_exponential_rate
from .classical import (
    default_envelope_dt,
    default_phi_dt,
    envelope_rhs_array,
    phi_rhs_array,
    phi_to_envelope,
    seed_state,
    simulate_envelope,
    trajectory_columns,
    EnvelopeState,
)
from .config import DEFAULT_DELTA, DEFAULT_NU_D, DEFAULT_OMEGA0, DEFAULT_RATIO
from .floquet import build_floquet_matrix, growth_rate, reduce_base
from .ode import NonFiniteStateError, TimeGrid, TimeSeries, convergence_check, integrate
from .params import (
    ModelParams,
    PTParams,
    derive_normal_modes,
    pt_parameters,
    resonance_detuning,
    resonant_omega0,
)
from .ptsym import (
    build_h_eff,
    eigenvalues_h_eff,
    extended_pt_report,
    is_pt_symmetric,
    parity_operator,
    PHASE_BROKEN,
    PHASE_EXCEPTIONAL,
    PHASE_UNBROKEN,
)
from .quantum import closed_form_ab, integrate_moments, vacuum_comparison

# Steps per fast period for the certified cross-representation runs; the
# default 64 leaves O(dt^4) carrier phase drift far above 1e-6 by t = 50,
# so equivalence checks integrate 8x finer.
CERTIFIED_STEPS_PER_PERIOD = 512

FAULT_RHS_PHI_SIGN = "rhs-phi-sign"
KNOWN_FAULTS = (FAULT_RHS_PHI_SIGN,)

# Regression anchors (see module docstring). Bands are wide enough for
# BLAS/libm variation across builds, narrow enough to flag real changes.
# The order-2 swap residual anchors at zero: the within-block swap turns
# out to be an exact symmetry of the transformed component system at every
# truncation order (verified by entrywise derivation), while the
# swap+reflect candidate breaks on the harmonic diagonal with residual
# 2 N nu_d.
GOLDEN_RATE_N4 = 0.10035030714400342
GOLDEN_RATE_N6 = 0.10032346956221955
GOLDEN_EXT_PT_SWAP_N2 = 0.0
GOLDEN_EXT_PT_SWAP_REFLECT_N2 = 8.0
GOLDEN_OFF_RESONANCE_RATE = 0.00048213992157373743
GOLDEN_RATIO_CLOSED_OVER_ODE = 2.0
GOLDEN_RATE_BAND = 1e-6
GOLDEN_SWAP_BAND = 1e-12
GOLDEN_RESIDUAL_BAND = 1e-9
GOLDEN_OFF_RES_BAND = 1e-5
GOLDEN_RATIO_BAND = 1e-6


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: dict
    detail: str


def default_check_params() -> ModelParams:
    return ModelParams(
        omega0=DEFAULT_OMEGA0,
        Omega=DEFAULT_OMEGA0 * DEFAULT_RATIO,
        delta=DEFAULT_DELTA,
        nu_d=DEFAULT_NU_D,
    )


def _certified_dt(params: ModelParams) -> float:
    modes = derive_normal_modes(params)
    return 2.0 * math.pi / (CERTIFIED_STEPS_PER_PERIOD * modes.omega2)


def _phi_rhs_maybe_faulted(params: ModelParams, fault: str | None):
    rhs = phi_rhs_array(params)
    if fault != FAULT_RHS_PHI_SIGN:
        return rhs
    wcsq = params.Omega * params.Omega

    def faulted(y: np.ndarray, t: float) -> np.ndarray:
        dy = rhs(y, t)
        dy[2] -= 2.0 * wcsq * y[1]  # coupling sign flipped in d(dphi1)/dt
        return dy

    return faulted


def _sample_params(rng: np.random.Generator) -> ModelParams:
    omega0 = rng.uniform(1.0, 20.0)
    return ModelParams(
        omega0=omega0,
        Omega=omega0 * rng.uniform(0.05, 0.95),
        delta=rng.uniform(0.01, 0.8),
        nu_d=rng.uniform(0.1, 5.0),
    )


def check_normal_mode_identities(params: ModelParams, fault=None) -> CheckResult:
    """Mode ordering, sum rules, and the two routes to the growth exponent."""
    rng = np.random.default_rng(421)
    worst_sum = worst_diff = worst_lam = worst_order = 0.0
    g_gt_J = True
    for _ in range(200):
        p = _sample_params(rng)
        modes = derive_normal_modes(p)
        pt = pt_parameters(p)
        if not modes.omega1 < p.omega0 < modes.omega2:
            worst_order = math.inf
        w0sq = p.omega0 * p.omega0
        wcsq = p.Omega * p.Omega
        worst_sum = max(worst_sum, abs(
            (modes.omega1**2 + modes.omega2**2 - 2.0 * w0sq) / (2.0 * w0sq)
        ))
        worst_diff = max(worst_diff, abs(
            (modes.omega2**2 - modes.omega1**2 - 2.0 * wcsq) / (2.0 * wcsq)
        ))
        drive = wcsq * p.delta
        worst_lam = max(worst_lam, abs(
            pt.lam * 8.0 * math.sqrt(modes.omega1 * modes.omega2) - drive
        ) / drive)
        two_route = math.sqrt(pt.g**2 - pt.J**2)
        worst_lam = max(worst_lam, abs(two_route - pt.lam) / pt.lam)
        g_gt_J = g_gt_J and (pt.g > pt.J > 0.0)
    passed = (
        worst_order == 0.0
        and worst_sum <= 1e-12
        and worst_diff <= 1e-12
        and worst_lam <= 1e-12
        and g_gt_J
    )
    return CheckResult(
        name="normal_mode_identities",
        passed=passed,
        measured={
            "max_rel_sum_rule": worst_sum,
            "max_rel_diff_rule": worst_diff,
            "max_rel_lambda_two_routes": worst_lam,
        },
        detail="mode ordering, quadratic sum rules, and both growth-exponent "
               "routes agree to 1e-12 over 200 sampled parameter sets",
    )


def check_resonance_roundtrip(params: ModelParams, fault=None) -> CheckResult:
    """resonant_omega0 composed with resonance_detuning returns ~0."""
    rng = np.random.default_rng(422)
    worst = 0.0
    for _ in range(200):
        ratio = rng.uniform(0.05, 0.95)
        nu_d = rng.uniform(0.1, 5.0)
        omega0 = resonant_omega0(ratio, nu_d)
        p = ModelParams(omega0=omega0, Omega=ratio * omega0, delta=0.1, nu_d=nu_d)
        worst = max(worst, abs(resonance_detuning(p)) / nu_d)
    return CheckResult(
        name="resonance_roundtrip",
        passed=worst <= 1e-10,
        measured={"max_rel_detuning": worst},
        detail="inverting the resonance condition reproduces zero detuning "
               "within 1e-10 relative over 200 sampled (ratio, nu_d) pairs",
    )


def check_integrator_convergence(params: ModelParams, fault=None) -> CheckResult:
    """Harmonic/exponential exactness and 4th-order step scaling."""

    def harmonic(y, t):
        return np.array([y[1], -y[0]])

    grid = TimeGrid(0.0, 2.0 * math.pi, 1e-3)
    series = integrate(harmonic, [1.0, 0.0], grid)
    harmonic_err = abs(series.values[-1, 0] - 1.0)

    def exponential(y, t):
        return 0.1 * y

    series = integrate(exponential, np.array([1.0]), TimeGrid(0.0, 10.0, 1e-3))
    exp_err = abs(series.values[-1, 0] - math.e)

    errors = convergence_check(harmonic, [1.0, 0.0], TimeGrid(0.0, 2.0 * math.pi, 0.05), 3)
    orders = [math.log2(errors[i] / errors[i + 1]) for i in range(len(errors) - 1)]
    monotone = all(errors[i] > errors[i + 1] for i in range(len(errors) - 1))
    order_ok = all(3.5 <= o <= 4.5 for o in orders)

    passed = harmonic_err <= 1e-9 and exp_err <= 1e-8 and monotone and order_ok
    return CheckResult(
        name="integrator_convergence",
        passed=passed,
        measured={
            "harmonic_endpoint_error": harmonic_err,
            "exponential_endpoint_error": exp_err,
            "observed_orders": list(orders),
        },
        detail="harmonic endpoint 1e-9, exponential endpoint 1e-8, halving "
               "errors decrease at observed order within [3.5, 4.5]",
    )


def check_kernel_reference_parity(params: ModelParams, fault=None) -> CheckResult:
    """Trajectory kernels agree with the generic integrator."""
    dt = default_phi_dt(params)
    grid = TimeGrid(0.0, 20.0, dt)
    y0 = seed_state().as_array()
    times, states, bad = backend.rk4_phi(
        params.omega0, params.Omega, params.delta, params.nu_d,
        y0, grid.t_start, grid.step, grid.n_steps,
    )
    if bad >= 0:
        raise NonFiniteStateError(times[bad])
    reference = integrate(phi_rhs_array(params), y0, grid)
    scale = float(np.max(np.abs(reference.values)))
    phi_diff = float(np.max(np.abs(states - reference.values))) / scale

    env_grid = TimeGrid(0.0, 20.0, default_envelope_dt(params))
    initial = phi_to_envelope(seed_state(), 0.0, derive_normal_modes(params))
    series = simulate_envelope(params, initial, env_grid, keep_counter_rotating=True)
    ref = integrate(
        envelope_rhs_array(params, True), initial.as_array(), env_grid,
        labels=("alpha", "beta"),
    )
    env_scale = float(np.max(np.abs(ref.values)))
    kernel_env = series.column("re_alpha") + 1j * series.column("im_alpha")
    ref_alpha = ref.column("alpha")
    env_diff = float(np.max(np.abs(kernel_env - ref_alpha))) / env_scale

    passed = phi_diff <= 1e-10 and env_diff <= 1e-10
    return CheckResult(
        name="kernel_reference_parity",
        passed=passed,
        measured={"phi_rel_diff": phi_diff, "envelope_rel_diff": env_diff},
        detail="compiled/pure trajectory kernels match the generic RK4 "
               "integrator to 1e-10 relative over t <= 20",
    )


def check_representation_equivalence(params: ModelParams, fault=None) -> CheckResult:
    """Displacement route and exact envelope route agree to 1e-6.

    Both routes run at the certified step (CERTIFIED_STEPS_PER_PERIOD
    samples per fast period); the displacement route exercises the
    reference RHS through the generic integrator.
    """
    dt = _certified_dt(params)
    grid = TimeGrid(0.0, 50.0, dt)
    initial = seed_state()

    phi_series = integrate(
        _phi_rhs_maybe_faulted(params, fault), initial.as_array(), grid
    )
    mapped = trajectory_columns(phi_series.times, phi_series.values, params)
    alpha_a = mapped.column("re_alpha") + 1j * mapped.column("im_alpha")
    beta_a = mapped.column("re_beta") + 1j * mapped.column("im_beta")

    env0 = phi_to_envelope(initial, 0.0, derive_normal_modes(params))
    env_series = simulate_envelope(params, env0, grid, keep_counter_rotating=True)
    alpha_b = env_series.column("re_alpha") + 1j * env_series.column("im_alpha")
    beta_b = env_series.column("re_beta") + 1j * env_series.column("im_beta")

    norm = np.sqrt(np.abs(alpha_a) ** 2 + np.abs(beta_a) ** 2)
    diff = np.sqrt(np.abs(alpha_a - alpha_b) ** 2 + np.abs(beta_a - beta_b) ** 2)
    rel = float(np.max(diff / norm))
    return CheckResult(
        name="representation_equivalence",
        passed=rel <= 1e-6,
        measured={"max_rel_difference": rel, "dt": grid.step},
        detail="displacement trajectory mapped to envelopes matches the "
               "counter-rotating envelope integration within 1e-6 relative "
               "over t in [0, 50] at the certified step",
    )


def check_envelope_conservation(params: ModelParams, fault=None) -> CheckResult:
    """Without drive each normal-mode envelope magnitude is conserved."""
    quiet = ModelParams(params.omega0, params.Omega, 0.0, params.nu_d)
    modes = derive_normal_modes(quiet)

    env0 = EnvelopeState(alpha=1.0 + 0.5j, beta=-0.25 + 1j)
    grid = TimeGrid(0.0, 50.0, default_envelope_dt(quiet))
    series = simulate_envelope(quiet, env0, grid, keep_counter_rotating=True)
    abs_alpha = series.column("abs_alpha")
    abs_beta = series.column("abs_beta")
    env_drift = max(
        float(np.max(np.abs(abs_alpha**2 - abs_alpha[0] ** 2))) / abs_alpha[0] ** 2,
        float(np.max(np.abs(abs_beta**2 - abs_beta[0] ** 2))) / abs_beta[0] ** 2,
    )

    grid_phi = TimeGrid(0.0, 10.0, _certified_dt(quiet))
    initial = seed_state()
    times, states, bad = backend.rk4_phi(
        quiet.omega0, quiet.Omega, 0.0, quiet.nu_d,
        initial.as_array(), grid_phi.t_start, grid_phi.step, grid_phi.n_steps,
    )
    if bad >= 0:
        raise NonFiniteStateError(times[bad])
    mapped = trajectory_columns(times, states, quiet)
    a2 = mapped.column("abs_alpha") ** 2
    b2 = mapped.column("abs_beta") ** 2
    phi_drift = max(
        float(np.max(np.abs(a2 - a2[0]))) / a2[0],
        float(np.max(np.abs(b2 - b2[0]))) / b2[0],
    )

    passed = env_drift <= 1e-8 and phi_drift <= 1e-8
    return CheckResult(
        name="envelope_conservation",
        passed=passed,
        measured={"envelope_route_drift": env_drift, "phi_route_drift": phi_drift},
        detail="with delta = 0, |alpha|^2 and |beta|^2 stay constant within "
               "1e-8 on both routes",
    )


def check_rwa_error_monotone(params: ModelParams, fault=None) -> CheckResult:
    """Counter-rotating corrections shrink as the drive amplitude shrinks."""
    errors = []
    for delta in (0.4, 0.2, 0.1):
        p = ModelParams(params.omega0, params.Omega, delta, params.nu_d)
        grid = TimeGrid(0.0, 40.0, default_envelope_dt(p))
        env0 = phi_to_envelope(seed_state(), 0.0, derive_normal_modes(p))
        full = simulate_envelope(p, env0, grid, keep_counter_rotating=True)
        rwa = simulate_envelope(p, env0, grid, keep_counter_rotating=False)
        af = full.column("re_alpha") + 1j * full.column("im_alpha")
        bf = full.column("re_beta") + 1j * full.column("im_beta")
        ar = rwa.column("re_alpha") + 1j * rwa.column("im_alpha")
        br = rwa.column("re_beta") + 1j * rwa.column("im_beta")
        norm = np.sqrt(np.abs(af) ** 2 + np.abs(bf) ** 2)
        diff = np.sqrt(np.abs(af - ar) ** 2 + np.abs(bf - br) ** 2)
        errors.append(float(np.max(diff / norm)))
    passed = errors[0] > errors[1] > errors[2]
    return CheckResult(
        name="rwa_error_monotone",
        passed=passed,
        measured={"errors_delta_0p4_0p2_0p1": errors},
        detail="rotating-wave error decreases monotonically over "
               "delta in {0.4, 0.2, 0.1}",
    )


def check_floquet_base_block(params: ModelParams, fault=None) -> CheckResult:
    """Order-0 matrix equals the analytic 2x2 block, squared dynamics match."""
    fm = build_floquet_matrix(params, 0)
    base = reduce_base(params)
    block_equal = bool(np.array_equal(fm.matrix, base))
    pt = pt_parameters(params)
    squared = (base @ base)[0, 0]
    lam_sq_rel = abs(squared.real - pt.lam**2) / pt.lam**2 + abs(squared.imag)
    passed = block_equal and lam_sq_rel <= 1e-12
    return CheckResult(
        name="floquet_base_block",
        passed=passed,
        measured={"block_bitwise_equal": block_equal, "lambda_sq_rel_err": lam_sq_rel},
        detail="order-0 component matrix equals the analytic base block "
               "bitwise; its square carries lambda^2 on the diagonal",
    )


def check_floquet_growth(params: ModelParams, fault=None) -> CheckResult:
    """Trajectory-norm growth exponent of the component system."""
    pt = pt_parameters(params)
    rate0 = growth_rate(build_floquet_matrix(params, 0), horizon=200.0)
    rel0 = abs(rate0 - pt.lam) / pt.lam

    quiet = ModelParams(params.omega0, params.Omega, 0.0, params.nu_d)
    rate_quiet = growth_rate(build_floquet_matrix(quiet, 2), horizon=200.0)

    passed = rel0 <= 0.01 and abs(rate_quiet) <= 1e-6
    return CheckResult(
        name="floquet_growth",
        passed=passed,
        measured={"rate_order0": rate0, "rel_err_vs_lambda": rel0,
                  "rate_no_drive": rate_quiet},
        detail="order-0 growth exponent within 1% of the analytic value; "
               "zero within 1e-6 without drive",
    )


def check_floquet_truncation(params: ModelParams, fault=None) -> CheckResult:
    """Truncation convergence of the growth exponent, with golden anchors.

    Runs at the recorded reference configuration (the anchors are tied to
    it), independent of the configured parameters.
    """
    params = default_check_params()
    rate4 = growth_rate(build_floquet_matrix(params, 4), horizon=200.0)
    rate6 = growth_rate(build_floquet_matrix(params, 6), horizon=200.0)
    rel_change = abs(rate4 - rate6) / abs(rate6)
    golden_ok = (
        abs(rate4 - GOLDEN_RATE_N4) <= GOLDEN_RATE_BAND
        and abs(rate6 - GOLDEN_RATE_N6) <= GOLDEN_RATE_BAND
    )
    passed = rel_change < 0.01 and golden_ok
    return CheckResult(
        name="floquet_truncation",
        passed=passed,
        measured={"rate_order4": rate4, "rate_order6": rate6,
                  "rel_change": rel_change, "golden_ok": golden_ok},
        detail="growth exponent changes by < 1% between orders 4 and 6 and "
               "matches the recorded regression anchors",
    )


def check_pt_two_mode(params: ModelParams, fault=None) -> CheckResult:
    """Parity involution, exact PT symmetry, eigenvalues, phase labels."""
    parity = parity_operator()
    p_sq = float(np.max(np.abs(parity @ parity - np.eye(2))))

    pt = pt_parameters(params)
    h = build_h_eff(pt)
    pt_check = is_pt_symmetric(h.matrix, parity, tol=1e-15)

    phase = eigenvalues_h_eff(pt)
    eig_err = max(
        abs(phase.eigenvalues[0] - 1j * pt.lam),
        abs(phase.eigenvalues[1] + 1j * pt.lam),
    )

    det = np.linalg.det(h.matrix)
    det_err = abs(det - (pt.g**2 - pt.J**2))

    herm = h.hermiticity_residual()
    herm_err = abs(herm - 2.0 * pt.g)

    rng = np.random.default_rng(423)
    labels_ok = phase.label == PHASE_BROKEN
    for _ in range(50):
        labels_ok = labels_ok and (
            eigenvalues_h_eff(pt_parameters(_sample_params(rng))).label
            == PHASE_BROKEN
        )
    synthetic_ok = (
        eigenvalues_h_eff(PTParams(g=0.0, J=1.0, lam=0.0)).label == PHASE_UNBROKEN
        and eigenvalues_h_eff(PTParams(g=1.0, J=1.0, lam=0.0)).label
        == PHASE_EXCEPTIONAL
    )
    counterexample = is_pt_symmetric(
        np.diag([1.0 + 0j, 2.0 + 0j]), parity, tol=1e-15
    )

    passed = (
        p_sq == 0.0
        and pt_check.symmetric
        and pt_check.residual <= 1e-15
        and eig_err <= 1e-12
        and det_err <= 1e-14
        and herm_err <= 1e-15
        and labels_ok
        and synthetic_ok
        and not counterexample.symmetric
        and counterexample.residual == 1.0
    )
    return CheckResult(
        name="pt_two_mode",
        passed=passed,
        measured={
            "pt_residual": pt_check.residual,
            "eigenvalue_error": eig_err,
            "det_error": det_err,
            "hermiticity_residual": herm,
        },
        detail="P^2 = I exactly, P conj(H) P = H within 1e-15, eigenvalues "
               "+-i lambda within 1e-12, phases labeled correctly on model "
               "and synthetic inputs",
    )


def check_pt_dynamics_consistency(params: ModelParams, fault=None) -> CheckResult:
    """a/b gain-loss dynamics reproduce the base-component dynamics."""
    from .ptsym import ab_inverse, ab_transform

    pt = pt_parameters(params)
    g, J = pt.g, pt.J
    grid = TimeGrid(0.0, 50.0, default_envelope_dt(params))

    def ab_rhs(y: np.ndarray, t: float) -> np.ndarray:
        return np.array([g * y[0] - J * y[1], J * y[0] - g * y[1]],
                        dtype=np.complex128)

    ab_series = integrate(ab_rhs, np.array([1.0 + 0j, 0j]), grid,
                          labels=("a", "b"))

    base = reduce_base(params)

    def base_rhs(y: np.ndarray, t: float) -> np.ndarray:
        return base @ y

    alpha0, beta0 = ab_inverse(1.0 + 0j, 0j)
    base_series = integrate(base_rhs, np.array([alpha0, beta0]), grid,
                            labels=("alpha0", "beta0"))

    a_from_base, b_from_base = ab_transform(
        base_series.column("alpha0"), base_series.column("beta0")
    )
    scale = float(np.max(np.abs(ab_series.values)))
    diff = max(
        float(np.max(np.abs(a_from_base - ab_series.column("a")))),
        float(np.max(np.abs(b_from_base - ab_series.column("b")))),
    ) / scale
    return CheckResult(
        name="pt_dynamics_consistency",
        passed=diff <= 1e-9,
        measured={"max_rel_difference": diff},
        detail="integrating the gain-loss pair and transforming back matches "
               "the base-component integration within 1e-9",
    )


def check_extended_pt(params: ModelParams, fault=None) -> CheckResult:
    """Order-0 symmetry is exact; higher-order residuals match anchors.

    No symmetry verdict is asserted beyond order 0; the residuals are
    regression-anchored. Measured behavior: the within-block swap stays an
    exact symmetry at every order, the swap+reflect candidate breaks on the
    harmonic diagonal with residual 2 N nu_d.
    """
    report0 = extended_pt_report(params, 0, tol=1e-15)

    quiet = ModelParams(params.omega0, params.Omega, 0.0, params.nu_d)
    report_quiet = extended_pt_report(quiet, 2)
    reflect_expected = 2.0 * 2 * params.nu_d
    quiet_ok = (
        report_quiet.swap.residual <= GOLDEN_SWAP_BAND
        and abs(report_quiet.swap_reflect.residual - reflect_expected)
        <= 1e-12 * reflect_expected
    )

    # the numeric anchors are recorded at the reference configuration
    report2 = extended_pt_report(default_check_params(), 2)
    golden_ok = (
        abs(report2.swap.residual - GOLDEN_EXT_PT_SWAP_N2)
        <= GOLDEN_SWAP_BAND
        and abs(report2.swap_reflect.residual - GOLDEN_EXT_PT_SWAP_REFLECT_N2)
        <= GOLDEN_RESIDUAL_BAND
    )

    passed = (
        report0.swap.symmetric
        and report0.swap.residual <= 1e-15
        and quiet_ok
        and golden_ok
    )
    return CheckResult(
        name="extended_pt",
        passed=passed,
        measured={
            "order0_residual": report0.swap.residual,
            "no_drive_swap_residual": report_quiet.swap.residual,
            "no_drive_swap_reflect_residual": report_quiet.swap_reflect.residual,
            "order2_swap_residual": report2.swap.residual,
            "order2_swap_reflect_residual": report2.swap_reflect.residual,
        },
        detail="order-0 block is exactly PT-symmetric under the mode swap; "
               "order-2 parity residuals match the recorded anchors (swap "
               "exact, swap+reflect broken by the harmonic diagonal)",
    )


def check_quantum_moment_equivalence(params: ModelParams, fault=None) -> CheckResult:
    """Moment integration from vacuum reproduces the closed forms."""
    pt = pt_parameters(params)
    grid = TimeGrid(0.0, 40.0, default_envelope_dt(params))
    series = integrate_moments(pt, grid)
    t = series.times
    n_a_ode = series.column("n_a")
    n_b_ode = series.column("n_b")
    n_a_cf, n_b_cf = closed_form_ab(pt, t)

    pos = t > 0.0
    rel_a = float(np.max(np.abs(n_a_ode[pos] - n_a_cf[pos]) / n_a_cf[pos]))
    rel_b = float(np.max(np.abs(n_b_ode[pos] - n_b_cf[pos]) / n_b_cf[pos]))

    # d(n_a + n_b)/dt = 2g (n_a - n_b) + 2g, via 5-point finite differences
    total = n_a_ode + n_b_ode
    h = grid.step
    interior = slice(2, -2)
    deriv = (
        -total[4:] + 8.0 * total[3:-1] - 8.0 * total[1:-3] + total[:-4]
    ) / (12.0 * h)
    rhs = 2.0 * pt.g * (n_a_ode - n_b_ode) + 2.0 * pt.g
    identity_rel = float(np.max(np.abs(deriv - rhs[interior]) / np.abs(rhs[interior])))

    cross = series.column("re_cross") + 1j * series.column("im_cross")
    positivity = bool(np.all(n_a_ode >= 0.0) and np.all(n_b_ode >= 0.0))
    schwarz = bool(np.all(
        np.abs(cross) ** 2 <= (n_a_ode + 1.0) * (n_b_ode + 1.0) + 1e-12
    ))

    passed = (
        rel_a <= 1e-6 and rel_b <= 1e-6 and identity_rel <= 1e-6
        and positivity and schwarz
    )
    return CheckResult(
        name="quantum_moment_equivalence",
        passed=passed,
        measured={
            "max_rel_n_a": rel_a,
            "max_rel_n_b": rel_b,
            "balance_identity_rel": identity_rel,
        },
        detail="vacuum moment integration matches the closed-form "
               "occupations within 1e-6 for t <= 40; the gain-balance "
               "identity holds against finite differences; moments stay "
               "positive and Schwarz-consistent",
    )


def check_quantum_asymptotics(params: ModelParams, fault=None) -> CheckResult:
    """Universal 2-lambda exponents, mode-occupation ratio, method ratio."""
    pt = pt_parameters(params)
    modes = derive_normal_modes(params)
    grid = TimeGrid(0.0, 80.0, default_envelope_dt(params))
    table = vacuum_comparison(params, grid)
    window = (40.0, 80.0)
    slopes = {}
    for column in ("n_a", "n_b", "S_alpha_ode", "S_beta_ode"):
        est = fit_exponential_rate(table, column, window)
        slopes[column] = est.rate
    target = 2.0 * pt.lam
    slope_rel = max(abs(s - target) / target for s in slopes.values())

    s_alpha = table.column("S_alpha_ode")
    s_beta = table.column("S_beta_ode")
    ratio_modes = float(s_beta[-1] / s_alpha[-1])
    ratio_expected = modes.omega1 / modes.omega2
    ratio_rel = abs(ratio_modes - ratio_expected) / ratio_expected

    ratio_alpha = table.column("ratio_alpha")
    t = table.times
    early = float(ratio_alpha[np.searchsorted(t, 1.0)])
    late = float(ratio_alpha[-1])
    ratio_golden_ok = (
        abs(early - GOLDEN_RATIO_CLOSED_OVER_ODE) <= GOLDEN_RATIO_BAND
        and abs(late - GOLDEN_RATIO_CLOSED_OVER_ODE) <= GOLDEN_RATIO_BAND
    )

    passed = slope_rel <= 0.01 and ratio_rel <= 0.01 and ratio_golden_ok
    return CheckResult(
        name="quantum_asymptotics",
        passed=passed,
        measured={
            "max_slope_rel_err": slope_rel,
            "occupation_ratio": ratio_modes,
            "occupation_ratio_expected": ratio_expected,
            "closed_over_ode_ratio_early": early,
            "closed_over_ode_ratio_late": late,
        },
        detail="every nonzero moment grows at 2*lambda within 1%; the "
               "beta/alpha occupation ratio approaches omega1/omega2 within "
               "1%; the closed-form/moment-ode ratio stays at its recorded "
               "value (a documented convention constant, not asserted "
               "against any external target)",
    )


def check_fit_oracles(params: ModelParams, fault=None) -> CheckResult:
    """The rate fitter on synthetic series with known exponents."""
    t = np.linspace(0.0, 100.0, 2001)
    pure = TimeSeries(t, np.exp(0.1 * t)[:, None], ("v",))
    est_pure = fit_exponential_rate(pure, "v", (0.0, 100.0))
    pure_err = abs(est_pure.rate - 0.1)

    contaminated = TimeSeries(
        t, (np.exp(0.1 * t) * (1.0 + 0.05 * np.sin(2.0 * t)))[:, None], ("v",)
    )
    est_cont = fit_exponential_rate(contaminated, "v", (20.0, 80.0))
    cont_rel = abs(est_cont.rate - 0.1) / 0.1

    constant = TimeSeries(t, np.full((t.size, 1), 3.0), ("v",))
    est_const = fit_exponential_rate(constant, "v", (0.0, 100.0))

    passed = (
        pure_err <= 1e-8
        and cont_rel <= 0.01
        and abs(est_const.rate) <= 1e-15
        and est_const.residual <= 1e-15
    )
    return CheckResult(
        name="fit_oracles",
        passed=passed,
        measured={
            "pure_exponential_error": pure_err,
            "contaminated_rel_error": cont_rel,
            "constant_rate": est_const.rate,
        },
        detail="pure exponential recovered to 1e-8, oscillation-contaminated "
               "exponential to 1%, constant series to exactly zero",
    )


def check_resonant_gain_fit(params: ModelParams, fault=None) -> CheckResult:
    """Fitted envelope-energy rate at resonance vs the analytic exponent.

    Runs at the recorded reference configuration: the 5% agreement claim
    presumes the drive sits at combination resonance.
    """
    params = default_check_params()
    pt = pt_parameters(params)
    est = fit_envelope_rate(params, window=(20.0, 80.0), seed_amplitude=1e-3)
    rel = abs(est.rate - pt.lam) / pt.lam
    return CheckResult(
        name="resonant_gain_fit",
        passed=rel <= 0.05,
        measured={"fitted_rate": est.rate, "analytic_lambda": pt.lam,
                  "rel_difference": rel, "fit_residual": est.residual},
        detail="directly integrated gain at resonance within 5% of the "
               "analytic growth exponent over the [20, 80] window",
    )


def check_off_resonance_rate(params: ModelParams, fault=None) -> CheckResult:
    """Far-detuned drive produces no resonant amplification."""
    detuned = ModelParams(omega0=6.5, Omega=3.25, delta=0.4, nu_d=2.0)
    est = fit_envelope_rate(detuned, window=(20.0, 120.0), seed_amplitude=1e-3)
    golden_ok = abs(est.rate - GOLDEN_OFF_RESONANCE_RATE) <= GOLDEN_OFF_RES_BAND
    passed = est.rate < 0.02 and golden_ok
    return CheckResult(
        name="off_resonance_rate",
        passed=passed,
        measured={"fitted_rate": est.rate, "golden_ok": golden_ok},
        detail="fitted rate at omega0 = 6.5 stays below 0.02 and matches "
               "the recorded regression anchor",
    )


def check_determinism(params: ModelParams, fault=None) -> CheckResult:
    """Identical inputs produce byte-identical serialized trajectories."""
    grid = TimeGrid(0.0, 10.0, default_phi_dt(params))
    first = _run_simulation_csv(params, grid)
    second = _run_simulation_csv(params, grid)
    passed = first == second
    return CheckResult(
        name="determinism",
        passed=passed,
        measured={"byte_identical": passed},
        detail="two back-to-back runs of the same simulation serialize to "
               "byte-identical CSV",
    )


def _run_simulation_csv(params: ModelParams, grid: TimeGrid) -> str:
    from .classical import simulate_oscillators

    series = simulate_oscillators(params, seed_state(), grid)
    return series.to_csv_text()


CHECKS = (
    check_normal_mode_identities,
    check_resonance_roundtrip,
    check_integrator_convergence,
    check_kernel_reference_parity,
    check_representation_equivalence,
    check_envelope_conservation,
    check_rwa_error_monotone,
    check_floquet_base_block,
    check_floquet_growth,
    check_floquet_truncation,
    check_pt_two_mode,
    check_pt_dynamics_consistency,
    check_extended_pt,
    check_quantum_moment_equivalence,
    check_quantum_asymptotics,
    check_fit_oracles,
    check_resonant_gain_fit,
    check_off_resonance_rate,
    check_determinism,
)


def check_names() -> list[str]:
    return [c.__name__.removeprefix("check_") for c in CHECKS]


def run_check_suite(
    params: ModelParams | None = None,
    inject_fault: str | None = None,
) -> dict:
    """Run every check and assemble the machine-readable report.

    ``inject_fault`` deliberately corrupts the reference dynamics so the
    suite's mutation sensitivity can be demonstrated; valid names are in
    KNOWN_FAULTS.
    """
    if inject_fault is not None and inject_fault not in KNOWN_FAULTS:
        raise ValueError(
            f"unknown fault {inject_fault!r}; known: {', '.join(KNOWN_FAULTS)}"
        )
    if params is None:
        params = default_check_params()
    if params.delta <= 0.0:
        raise ValueError(
            "the check suite exercises the driven model and needs delta > 0 "
            "(undriven sub-cases are built internally)"
        )
    results = [check(params, fault=inject_fault) for check in CHECKS]
    failed = [r.name for r in results if not r.passed]
    return {
        "suite": "qaserdyn.checks",
        "backend": backend.backend_name(),
        "params": {
            "omega0": params.omega0,
            "omega_coupling": params.Omega,
            "delta": params.delta,
            "nu_d": params.nu_d,
        },
        "injected_fault": inject_fault,
        "all_passed": not failed,
        "n_passed": len(results) - len(failed),
        "n_failed": len(failed),
        "failed": failed,
        "checks": [
            {
                "name": r.name,
                "passed": bool(r.passed),
                "measured": r.measured,
                "detail": r.detail,
            }
            for r in results
        ],
    }
