import cmath
import math

import numpy as np
import pytest

from qaserdyn import (
    EnvelopeState,
    ModelParams,
    OscillatorState,
    TimeGrid,
    derive_normal_modes,
    envelope_to_xy,
    phi_to_envelope,
    phi_to_xy,
    pt_parameters,
    rhs_envelope,
    rhs_phi,
    seed_state,
    simulate_envelope,
    simulate_oscillators,
    simulate_phi,
    xy_to_envelope,
    xy_to_phi,
)
from qaserdyn.analysis import fit_exponential_rate
from qaserdyn.checks import (
    check_envelope_conservation,
    check_representation_equivalence,
    check_rwa_error_monotone,
    _certified_dt,
)
from qaserdyn.classical import XYState, default_envelope_dt, default_phi_dt


class TestRhsPhi:
    def test_symmetric_mode_acceleration(self, nominal_params):
        state = OscillatorState(1.0, 1.0, 0.0, 0.0)
        d = rhs_phi(state, 0.7, ModelParams(8.0, 4.0, 0.0, 2.0))
        omega1_sq = 8.0**2 - 4.0**2
        assert d.phi1 == 0.0 and d.phi2 == 0.0
        assert d.dphi1 == pytest.approx(-omega1_sq, rel=1e-15)
        assert d.dphi2 == pytest.approx(-omega1_sq, rel=1e-15)

    def test_antisymmetric_mode_acceleration(self):
        state = OscillatorState(1.0, -1.0, 0.0, 0.0)
        d = rhs_phi(state, 0.0, ModelParams(8.0, 4.0, 0.0, 2.0))
        omega2_sq = 8.0**2 + 4.0**2
        assert d.dphi1 == pytest.approx(-omega2_sq, rel=1e-15)
        assert d.dphi2 == pytest.approx(omega2_sq, rel=1e-15)

    def test_drive_enters_second_oscillator_only(self):
        p = ModelParams(8.0, 4.0, 0.4, 2.0)
        state = OscillatorState(1.0, 0.0, 0.0, 0.0)
        d = rhs_phi(state, 0.0, p)
        # at t = 0 the drive multiplies phi1 by Omega^2 (1 + delta)
        assert d.dphi2 == pytest.approx(16.0 * 1.4, rel=1e-15)
        assert d.dphi1 == pytest.approx(-64.0, rel=1e-15)

    def test_symmetric_mode_oscillates_at_lower_frequency(self):
        p = ModelParams(8.0, 4.0, 0.0, 2.0)
        modes = derive_normal_modes(p)
        grid = TimeGrid(0.0, 5.0, _certified_dt(p))
        series = simulate_phi(p, OscillatorState(1.0, 1.0, 0.0, 0.0), grid)
        expected = np.cos(modes.omega1 * series.times)
        np.testing.assert_allclose(series.column("phi1"), expected, atol=1e-7)
        np.testing.assert_allclose(series.column("phi2"), expected, atol=1e-7)


class TestCoordinateMaps:
    def test_sum_difference_values(self):
        assert phi_to_xy(OscillatorState(1.0, 1.0, 0.0, 0.0)) == XYState(2.0, 0.0, 0.0, 0.0)
        assert phi_to_xy(OscillatorState(1.0, -1.0, 0.0, 0.0)) == XYState(0.0, 2.0, 0.0, 0.0)

    def test_roundtrip_is_identity(self):
        rng = np.random.default_rng(31)
        for _ in range(100):
            state = OscillatorState(*rng.standard_normal(4))
            back = xy_to_phi(phi_to_xy(state))
            for name in ("phi1", "phi2", "dphi1", "dphi2"):
                assert getattr(back, name) == pytest.approx(
                    getattr(state, name), rel=1e-15, abs=1e-15)

    def test_free_mode_envelope_is_constant(self, nominal_params):
        modes = derive_normal_modes(nominal_params)
        for t in np.linspace(0.0, 7.0, 23):
            xy = XYState(
                X=math.cos(modes.omega1 * t),
                Y=0.0,
                dX=-modes.omega1 * math.sin(modes.omega1 * t),
                dY=0.0,
            )
            env = xy_to_envelope(xy, t, modes)
            assert env.alpha == pytest.approx(1.0 + 0.0j, abs=1e-14)

    def test_quarter_phase_initial_velocity(self, nominal_params):
        modes = derive_normal_modes(nominal_params)
        env = xy_to_envelope(XYState(0.0, 0.0, modes.omega1, 0.0), 0.0, modes)
        assert env.alpha == pytest.approx(1j, abs=1e-15)

    def test_envelope_roundtrip(self, nominal_params):
        modes = derive_normal_modes(nominal_params)
        rng = np.random.default_rng(37)
        for _ in range(100):
            xy = XYState(*rng.standard_normal(4))
            t = rng.uniform(0.0, 30.0)
            back = envelope_to_xy(xy_to_envelope(xy, t, modes), t, modes)
            for name in ("X", "Y", "dX", "dY"):
                assert getattr(back, name) == pytest.approx(
                    getattr(xy, name), rel=1e-14, abs=1e-14)

    def test_envelope_magnitude_ignores_phase_factor(self, nominal_params):
        modes = derive_normal_modes(nominal_params)
        xy = XYState(0.3, -0.2, 1.1, 0.7)
        z1 = complex(xy.X, xy.dX / modes.omega1)
        for t in (0.0, 1.3, 9.7):
            env = xy_to_envelope(xy, t, modes)
            assert abs(env.alpha) == pytest.approx(abs(z1), rel=1e-15)


class TestRhsEnvelope:
    def test_no_drive_freezes_envelopes(self, nominal_params):
        p = ModelParams(8.0, 4.0, 0.0, 2.0)
        env = EnvelopeState(0.3 + 0.4j, -0.1 + 0.2j)
        for keep in (True, False):
            d = rhs_envelope(env, 1.234, p, keep_counter_rotating=keep)
            assert d.alpha == 0.0 and d.beta == 0.0

    def test_counter_rotating_terms_change_the_derivative(self, nominal_params):
        env = EnvelopeState(0.3 + 0.4j, -0.1 + 0.2j)
        full = rhs_envelope(env, 0.37, nominal_params, keep_counter_rotating=True)
        rwa = rhs_envelope(env, 0.37, nominal_params, keep_counter_rotating=False)
        assert full.alpha != rwa.alpha

    def test_matches_explicit_formula(self, nominal_params):
        p = nominal_params
        modes = derive_normal_modes(p)
        env = EnvelopeState(0.25 - 0.5j, 0.8 + 0.1j)
        t = 2.13
        c1 = p.Omega**2 * p.delta / (4.0 * modes.omega1)
        s = (env.alpha * cmath.exp(-1j * modes.omega1 * t)
             + env.beta * cmath.exp(-1j * modes.omega2 * t))
        expected = (1j * c1 * math.cos(p.nu_d * t) * s
                    * cmath.exp(1j * modes.omega1 * t))
        d = rhs_envelope(env, t, p, keep_counter_rotating=False)
        assert d.alpha == pytest.approx(expected, rel=1e-14)


class TestTrajectories:
    def test_simulation_columns(self, resonant_params):
        grid = TimeGrid(0.0, 2.0, default_phi_dt(resonant_params))
        series = simulate_oscillators(resonant_params, seed_state(), grid)
        assert series.labels == (
            "phi1", "phi2", "X", "Y",
            "re_alpha", "im_alpha", "re_beta", "im_beta",
            "abs_alpha", "abs_beta",
        )
        assert series.column("phi1")[0] == 1e-3
        assert series.column("X")[0] == pytest.approx(1e-3)
        assert series.column("abs_alpha")[0] == pytest.approx(1e-3)

    def test_representation_equivalence(self, resonant_params):
        result = check_representation_equivalence(resonant_params)
        assert result.passed, result.measured

    def test_certified_step_is_converged(self, resonant_params):
        # halving study certifies the step used by the equivalence checks
        from qaserdyn import convergence_check
        from qaserdyn.classical import phi_rhs_array

        grid = TimeGrid(0.0, 50.0, _certified_dt(resonant_params))
        errors = convergence_check(
            phi_rhs_array(resonant_params), seed_state().as_array(), grid, 2)
        scale = 1e-3 * math.exp(0.101 * 50.0)  # seeded amplitude at t_end
        assert errors[0] / scale <= 1e-6
        order = math.log2(errors[0] / errors[1])
        assert 3.4 <= order <= 4.6

    def test_envelope_conservation_without_drive(self, resonant_params):
        result = check_envelope_conservation(resonant_params)
        assert result.passed, result.measured

    def test_rwa_error_shrinks_with_drive(self, resonant_params):
        result = check_rwa_error_monotone(resonant_params)
        assert result.passed, result.measured

    def test_full_coordinate_gain_matches_analytic_exponent(self, resonant_params):
        # seeded amplitude growth at the analytic rate (5% over [20, 80])
        lam = pt_parameters(resonant_params).lam
        grid = TimeGrid(0.0, 80.0, default_phi_dt(resonant_params))
        series = simulate_oscillators(resonant_params, seed_state(), grid)
        amp = np.sqrt(series.column("abs_alpha")**2 + series.column("abs_beta")**2)
        fit = fit_exponential_rate(
            type(series)(series.times, amp[:, None], ("amp",)), "amp", (20.0, 80.0))
        assert fit.rate == pytest.approx(lam, rel=0.05)

    def test_rwa_envelope_gain_matches_analytic_exponent(self, resonant_params):
        lam = pt_parameters(resonant_params).lam
        grid = TimeGrid(0.0, 80.0, default_envelope_dt(resonant_params))
        env0 = phi_to_envelope(seed_state(), 0.0, derive_normal_modes(resonant_params))
        series = simulate_envelope(resonant_params, env0, grid,
                                   keep_counter_rotating=False)
        fit = fit_exponential_rate(series, "abs_alpha", (20.0, 80.0))
        assert fit.rate == pytest.approx(lam, rel=0.03)
