import math

import numpy as np
import pytest

from qaserdyn import (
    ModelParams,
    MomentSet,
    NoiseModel,
    PTParams,
    TimeGrid,
    closed_form_ab,
    closed_form_alpha_beta,
    derive_normal_modes,
    integrate_moments,
    moment_rhs,
    moments_to_alphabeta,
    pt_parameters,
    vacuum_comparison,
    vacuum_growth_curve,
)
from qaserdyn.classical import default_envelope_dt
from qaserdyn.quantum import VACUUM
from qaserdyn.analysis import fit_exponential_rate


class TestNoiseModel:
    def test_cross_coefficient_equals_gain(self, nominal_params):
        model = NoiseModel.from_params(nominal_params)
        g = pt_parameters(nominal_params).g
        assert model.c == pytest.approx(g, rel=1e-15)
        assert model.d_aa == pytest.approx(2.0 * g, rel=1e-15)
        assert model.d_bb == pytest.approx(2.0 * g, rel=1e-15)

    def test_no_drive_has_no_noise(self):
        model = NoiseModel.from_params(ModelParams(8.0, 4.0, 0.0, 2.0))
        assert model.c == 0.0 and model.d_aa == 0.0


class TestMomentRhs:
    def test_vacuum_source_is_twice_gain(self, nominal_params):
        pt = pt_parameters(nominal_params)
        d = moment_rhs(VACUUM, pt)
        assert d.n_a == pytest.approx(2.0 * pt.g, rel=1e-15)
        assert d.n_b == 0.0
        assert d.cross == 0.0

    def test_no_gain_freezes_vacuum(self):
        d = moment_rhs(VACUUM, PTParams(g=0.0, J=0.5, lam=0.0))
        assert d.n_a == 0.0 and d.n_b == 0.0 and d.cross == 0.0

    def test_structure(self, nominal_params):
        pt = pt_parameters(nominal_params)
        m = MomentSet(n_a=2.0, n_b=0.5, cross=0.25 + 0.1j)
        d = moment_rhs(m, pt)
        assert d.n_a == pytest.approx(
            2.0 * pt.g * 2.0 - 2.0 * pt.J * 0.25 + 2.0 * pt.g)
        assert d.n_b == pytest.approx(-2.0 * pt.g * 0.5 + 2.0 * pt.J * 0.25)
        assert d.cross == pytest.approx(pt.J * 1.5)


class TestClosedForms:
    def test_vacuum_at_time_zero(self, nominal_params):
        pt = pt_parameters(nominal_params)
        n_a, n_b = closed_form_ab(pt, 0.0)
        assert n_a == 0.0 and n_b == 0.0
        curves = closed_form_alpha_beta(nominal_params, 0.0)
        assert curves.s_alpha == 0.0 and curves.s_beta == 0.0

    def test_rejects_unbroken_phase(self):
        with pytest.raises(ValueError):
            closed_form_ab(PTParams(g=0.1, J=0.2, lam=0.0), 1.0)
        with pytest.raises(ValueError):
            closed_form_ab(PTParams(g=0.0, J=0.0, lam=0.0), 1.0)

    def test_small_time_gain_mode_slope(self, nominal_params):
        # n_a ~ 2 g t as t -> 0
        pt = pt_parameters(nominal_params)
        t = 1e-6
        n_a, _ = closed_form_ab(pt, t)
        assert n_a / t == pytest.approx(2.0 * pt.g, rel=1e-5)

    def test_small_time_loss_mode_cubic(self, nominal_params):
        # n_b ~ (2/3) J^2 g t^3 as t -> 0
        pt = pt_parameters(nominal_params)
        t = 1e-3
        _, n_b = closed_form_ab(pt, t)
        assert n_b / t**3 == pytest.approx(2.0 / 3.0 * pt.J**2 * pt.g, rel=1e-4)

    def test_small_time_base_component_slope_carries_factor_two(self, nominal_params):
        # the printed closed form starts at slope 2g, twice the moment
        # route's g (the documented convention discrepancy)
        pt = pt_parameters(nominal_params)
        t = 1e-6
        curves = closed_form_alpha_beta(nominal_params, t)
        assert curves.s_alpha / t == pytest.approx(2.0 * pt.g, rel=1e-4)
        assert curves.s_beta / t == pytest.approx(2.0 * pt.g, rel=1e-4)

    def test_asymptotic_exponent(self, nominal_params):
        pt = pt_parameters(nominal_params)
        n_a_40, _ = closed_form_ab(pt, 40.0)
        n_a_60, _ = closed_form_ab(pt, 60.0)
        slope = (math.log(n_a_60) - math.log(n_a_40)) / 20.0
        assert slope == pytest.approx(2.0 * pt.lam, rel=0.01)

    def test_occupation_ratio_approaches_mode_ratio(self, nominal_params):
        modes = derive_normal_modes(nominal_params)
        curves = closed_form_alpha_beta(nominal_params, 80.0)
        assert curves.s_beta / curves.s_alpha == pytest.approx(
            modes.omega1 / modes.omega2, rel=1e-3)
        assert modes.omega1 / modes.omega2 == pytest.approx(0.7746, abs=1e-4)

    def test_vectorized_over_time(self, nominal_params):
        pt = pt_parameters(nominal_params)
        t = np.linspace(0.0, 10.0, 11)
        n_a, n_b = closed_form_ab(pt, t)
        assert n_a.shape == t.shape
        assert np.all(np.diff(n_a) > 0.0)


class TestMomentsToOccupations:
    def test_reference_values(self):
        assert moments_to_alphabeta(MomentSet(1.0, 1.0, 0j)) == (1.0, 1.0)
        assert moments_to_alphabeta(MomentSet(1.0, 1.0, 1.0 + 0j)) == (2.0, 0.0)

    def test_sum_is_preserved(self):
        rng = np.random.default_rng(53)
        for _ in range(100):
            m = MomentSet(
                n_a=float(rng.uniform(0, 5)),
                n_b=float(rng.uniform(0, 5)),
                cross=complex(*rng.standard_normal(2)),
            )
            s_alpha, s_beta = moments_to_alphabeta(m)
            assert s_alpha + s_beta == pytest.approx(m.n_a + m.n_b, rel=1e-14)


class TestVacuumCurves:
    def test_moment_integration_matches_closed_forms(self, nominal_params):
        pt = pt_parameters(nominal_params)
        grid = TimeGrid(0.0, 40.0, default_envelope_dt(nominal_params))
        series = integrate_moments(pt, grid)
        n_a_cf, n_b_cf = closed_form_ab(pt, series.times)
        pos = series.times > 0.0
        rel_a = np.max(np.abs(series.column("n_a")[pos] - n_a_cf[pos]) / n_a_cf[pos])
        rel_b = np.max(np.abs(series.column("n_b")[pos] - n_b_cf[pos]) / n_b_cf[pos])
        assert rel_a <= 1e-6
        assert rel_b <= 1e-6

    def test_closed_form_is_exactly_twice_the_moment_route(self, nominal_params):
        # the printed base-component curves equal 2x the propagated moments
        # for all times, not only asymptotically
        grid = TimeGrid(0.0, 40.0, default_envelope_dt(nominal_params))
        closed = vacuum_growth_curve(nominal_params, grid, "closed_form")
        ode = vacuum_growth_curve(nominal_params, grid, "moment_ode")
        pos = closed.times > 0.0
        for column in ("S_alpha", "S_beta"):
            ratio = closed.column(column)[pos] / ode.column(column)[pos]
            np.testing.assert_allclose(ratio, 2.0, rtol=1e-6)

    def test_no_drive_curves_are_identically_zero(self):
        p = ModelParams(8.0, 4.0, 0.0, 2.0)
        grid = TimeGrid(0.0, 10.0, 0.01)
        for method in ("closed_form", "moment_ode"):
            series = vacuum_growth_curve(p, grid, method)
            assert np.all(series.values == 0.0)

    def test_unknown_method_rejected(self, nominal_params):
        with pytest.raises(ValueError):
            vacuum_growth_curve(nominal_params, TimeGrid(0.0, 1.0, 0.1), "exact")

    def test_comparison_table(self, nominal_params):
        grid = TimeGrid(0.0, 80.0, default_envelope_dt(nominal_params))
        table = vacuum_comparison(nominal_params, grid)
        assert table.labels == (
            "S_alpha_closed", "S_beta_closed", "S_alpha_ode", "S_beta_ode",
            "n_a", "n_b", "ratio_alpha",
        )
        ratio = table.column("ratio_alpha")
        assert math.isnan(ratio[0])  # both methods are zero at t = 0
        assert ratio[-1] == pytest.approx(2.0, abs=1e-6)
        assert ratio[np.searchsorted(table.times, 1.0)] == pytest.approx(
            2.0, abs=1e-6)

    def test_growth_exponent_universality(self, nominal_params):
        pt = pt_parameters(nominal_params)
        grid = TimeGrid(0.0, 80.0, default_envelope_dt(nominal_params))
        table = vacuum_comparison(nominal_params, grid)
        for column in ("n_a", "n_b", "S_alpha_ode", "S_beta_ode",
                       "S_alpha_closed", "S_beta_closed"):
            est = fit_exponential_rate(table, column, (40.0, 80.0))
            assert est.rate == pytest.approx(2.0 * pt.lam, rel=0.01), column

    def test_positivity_and_schwarz_bound(self, nominal_params):
        pt = pt_parameters(nominal_params)
        grid = TimeGrid(0.0, 60.0, default_envelope_dt(nominal_params))
        series = integrate_moments(pt, grid)
        n_a = series.column("n_a")
        n_b = series.column("n_b")
        cross_sq = series.column("re_cross")**2 + series.column("im_cross")**2
        assert np.all(n_a >= 0.0)
        assert np.all(n_b >= 0.0)
        assert np.all(cross_sq <= (n_a + 1.0) * (n_b + 1.0) + 1e-12)

    def test_gain_balance_identity(self, nominal_params):
        # d(n_a + n_b)/dt = 2 g (n_a - n_b) + 2 g against finite differences
        pt = pt_parameters(nominal_params)
        grid = TimeGrid(0.0, 40.0, default_envelope_dt(nominal_params))
        series = integrate_moments(pt, grid)
        n_a = series.column("n_a")
        n_b = series.column("n_b")
        total = n_a + n_b
        h = grid.step
        deriv = (-total[4:] + 8.0 * total[3:-1]
                 - 8.0 * total[1:-3] + total[:-4]) / (12.0 * h)
        rhs = (2.0 * pt.g * (n_a - n_b) + 2.0 * pt.g)[2:-2]
        assert np.max(np.abs(deriv - rhs) / np.abs(rhs)) <= 1e-6

    def test_imaginary_cross_moment_stays_zero(self, nominal_params):
        pt = pt_parameters(nominal_params)
        series = integrate_moments(pt, TimeGrid(0.0, 20.0, 0.01))
        assert np.all(series.column("im_cross") == 0.0)
