import json

import pytest

from qaserdyn.checks import check_names
from qaserdyn.cli import main, parse_cli


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestParsing:
    def test_unknown_flag_exits_2(self):
        with pytest.raises(SystemExit) as info:
            main(["pt", "--frequency", "8"])
        assert info.value.code == 2

    def test_missing_subcommand_exits_2(self):
        with pytest.raises(SystemExit) as info:
            main([])
        assert info.value.code == 2

    def test_format_not_accepted_by_json_only_commands(self):
        with pytest.raises(SystemExit) as info:
            main(["pt", "--format", "json"])
        assert info.value.code == 2

    def test_invalid_model_parameter_exits_2(self, capsys):
        code, out, err = run_cli(["pt", "--delta", "-1"], capsys)
        assert code == 2
        assert "delta" in err

    def test_invalid_window_exits_2(self):
        with pytest.raises(SystemExit) as info:
            main(["sweep", "--window", "80:20"])
        assert info.value.code == 2

    def test_parse_cli_resolves_defaults(self):
        config = parse_cli(["simulate"])
        assert config.command == "simulate"
        assert config.omega0 == 7.93624
        assert config.coupling() == pytest.approx(7.93624 / 2.0)
        assert config.delta == 0.4
        assert config.nu_d == 2.0

    def test_parse_cli_validates_parameters(self):
        with pytest.raises(ValueError):
            parse_cli(["simulate", "--omega0", "-3"])


class TestPtCommand:
    def test_reference_output(self, capsys):
        code, out, _ = run_cli([
            "pt", "--omega0", "8", "--omega-coupling", "4",
            "--delta", "0.4", "--nu-d", "2",
        ], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["g"] == pytest.approx(0.102457, abs=1e-6)
        assert report["J"] == pytest.approx(0.013014, abs=1e-6)
        assert report["lambda"] == pytest.approx(0.101626, abs=1e-6)
        assert report["phase"] == "broken"
        assert report["pt_residual"] == 0.0
        assert report["hermiticity_residual"] == pytest.approx(
            2.0 * report["g"], rel=1e-12)
        assert report["eig_plus_im"] == pytest.approx(report["lambda"], rel=1e-12)
        assert report["eig_plus_re"] == 0.0

    def test_extended_residuals_with_order(self, capsys):
        code, out, _ = run_cli(["pt", "--order", "2"], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["extended_order"] == 2
        assert report["extended_residual_swap"] <= 1e-12
        assert report["extended_residual_swap_reflect"] == pytest.approx(
            8.0, rel=1e-12)

    def test_defaults_sit_at_resonance(self, capsys):
        code, out, _ = run_cli(["pt"], capsys)
        report = json.loads(out)
        assert report["omega0"] == 7.93624
        assert report["omega_coupling"] == pytest.approx(7.93624 / 2.0)
        assert report["delta"] == 0.4
        assert report["nu_d"] == 2.0


class TestSeriesCommands:
    def test_simulate_csv_columns_and_seed(self, capsys):
        code, out, _ = run_cli(["simulate", "--t-end", "2"], capsys)
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == ("t,phi1,phi2,X,Y,re_alpha,im_alpha,re_beta,"
                            "im_beta,abs_alpha,abs_beta")
        first = [float(x) for x in lines[1].split(",")]
        assert first[0] == 0.0
        assert first[1] == 1e-3  # seeded displacement
        assert first[2] == 0.0

    def test_simulate_json_format(self, capsys):
        code, out, _ = run_cli(["simulate", "--t-end", "1", "--format", "json"],
                               capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["labels"][0] == "t"
        assert len(payload["rows"]) >= 2

    def test_envelope_columns(self, capsys):
        code, out, _ = run_cli(["envelope", "--t-end", "2"], capsys)
        assert code == 0
        header = out.split("\n", 1)[0]
        assert header == "t,re_alpha,im_alpha,re_beta,im_beta,abs_alpha,abs_beta"

    def test_envelope_rwa_method(self, capsys):
        code, full, _ = run_cli(["envelope", "--t-end", "5"], capsys)
        code2, rwa, _ = run_cli(["envelope", "--t-end", "5", "--method", "rwa"],
                                capsys)
        assert code == code2 == 0
        assert full != rwa

    def test_quantum_columns(self, capsys):
        code, out, _ = run_cli(["quantum", "--t-end", "5"], capsys)
        assert code == 0
        header = out.split("\n", 1)[0]
        assert header == ("t,S_alpha_closed,S_beta_closed,S_alpha_ode,"
                          "S_beta_ode,n_a,n_b,ratio_alpha")

    def test_quantum_json_maps_nan_to_null(self, capsys):
        code, out, _ = run_cli(["quantum", "--t-end", "1", "--format", "json"],
                               capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["rows"][0][-1] is None  # ratio undefined at t = 0

    def test_output_file(self, tmp_path, capsys):
        target = tmp_path / "series.csv"
        code, out, _ = run_cli(["simulate", "--t-end", "1", "--out", str(target)],
                               capsys)
        assert code == 0
        assert out == ""
        text = target.read_text(encoding="utf-8")
        assert text.startswith("t,phi1")
        assert "\r" not in text

    def test_numerical_abort_exits_3(self, capsys):
        code, out, err = run_cli(
            ["simulate", "--t-end", "7600", "--dt", "0.05"], capsys)
        assert code == 3
        assert "non-finite" in err

    def test_byte_identical_reruns(self, capsys):
        args = ["simulate", "--t-end", "3"]
        _, first, _ = run_cli(args, capsys)
        _, second, _ = run_cli(args, capsys)
        assert first == second

    def test_explicit_step_controls_sample_count(self, capsys):
        code, out, _ = run_cli(["simulate", "--t-end", "1", "--dt", "0.25"],
                               capsys)
        assert code == 0
        assert len(out.strip().split("\n")) == 6  # header + 5 samples


class TestFloquetCommand:
    def test_matrix_dump(self, capsys):
        code, out, _ = run_cli(["floquet", "--order", "0"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["N"] == 0
        assert payload["nu_d"] == 2.0
        assert len(payload["entries"]) == 2
        for row, col, re, im in payload["entries"]:
            assert re == 0.0
            assert abs(im) > 0.0

    def test_default_order(self, capsys):
        code, out, _ = run_cli(["floquet"], capsys)
        payload = json.loads(out)
        assert payload["N"] == 2


class TestSweepCommand:
    def test_small_sweep_csv(self, capsys):
        code, out, _ = run_cli(
            ["sweep", "--sweep-range", "7.9:8.0:3"], capsys)
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "omega0,fitted_rate,analytic_lambda,detuning,residual"
        assert len(lines) == 4
        rates = [float(line.split(",")[1]) for line in lines[1:]]
        assert all(0.05 < r < 0.15 for r in rates)

    def test_worker_pool_matches_serial(self, capsys):
        args = ["sweep", "--sweep-range", "7.9:8.0:2"]
        _, serial, _ = run_cli(args, capsys)
        _, parallel, _ = run_cli(args + ["--jobs", "2"], capsys)
        assert serial == parallel

    def test_sweep_json_format(self, capsys):
        code, out, _ = run_cli(
            ["sweep", "--sweep-range", "7.9:8.0:2", "--format", "json"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["labels"][0] == "omega0"
        assert len(payload["rows"]) == 2


class TestConfigFile:
    def test_config_with_cli_override(self, tmp_path, capsys):
        config = tmp_path / "run.json"
        config.write_text(json.dumps({
            "omega0": 8.0, "omega_coupling": 4.0, "delta": 0.1, "nu_d": 2.0,
        }))
        code, out, _ = run_cli(
            ["pt", "--config", str(config), "--delta", "0.4"], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["omega0"] == 8.0
        assert report["delta"] == 0.4  # CLI wins over file

    def test_unknown_config_key_exits_2(self, tmp_path, capsys):
        config = tmp_path / "run.json"
        config.write_text(json.dumps({"omega_zero": 8.0}))
        code, _, err = run_cli(["pt", "--config", str(config)], capsys)
        assert code == 2
        assert "omega_zero" in err

    def test_malformed_config_exits_2(self, tmp_path, capsys):
        config = tmp_path / "run.json"
        config.write_text("{not json")
        code, _, err = run_cli(["pt", "--config", str(config)], capsys)
        assert code == 2

    def test_missing_config_file_exits_2(self, capsys):
        code, _, err = run_cli(["pt", "--config", "/nonexistent/run.json"], capsys)
        assert code == 2

    def test_environment_fallback(self, tmp_path, capsys, monkeypatch):
        config = tmp_path / "env.json"
        config.write_text(json.dumps({"omega0": 9.0}))
        monkeypatch.setenv("QASER_DYN_CONFIG", str(config))
        code, out, _ = run_cli(["pt"], capsys)
        assert code == 0
        assert json.loads(out)["omega0"] == 9.0

    def test_cli_config_beats_environment(self, tmp_path, capsys, monkeypatch):
        env_config = tmp_path / "env.json"
        env_config.write_text(json.dumps({"omega0": 9.0}))
        cli_config = tmp_path / "cli.json"
        cli_config.write_text(json.dumps({"omega0": 8.5}))
        monkeypatch.setenv("QASER_DYN_CONFIG", str(env_config))
        code, out, _ = run_cli(["pt", "--config", str(cli_config)], capsys)
        assert json.loads(out)["omega0"] == 8.5

    def test_window_string_in_config(self, tmp_path, capsys):
        config = tmp_path / "run.json"
        config.write_text(json.dumps({"window": "30:90", "sweep_range": "7.9:8.0:2"}))
        code, out, _ = run_cli(["sweep", "--config", str(config)], capsys)
        assert code == 0
        assert len(out.strip().split("\n")) == 3


class TestCheckCommand:
    def test_list_prints_names_without_running(self, capsys):
        code, out, _ = run_cli(["check", "--list"], capsys)
        assert code == 0
        assert out.strip().split("\n") == check_names()
