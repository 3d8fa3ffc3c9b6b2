"""Command-line front end.

Subcommands: simulate | envelope | floquet | pt | sweep | quantum | check.
Exit codes: 0 success, 1 check failure, 2 usage/validation error,
3 numerical abort (non-finite state).
"""

from __future__ import annotations

import argparse
import io
import sys

from . import __version__
from .analysis import FitFailure, sweep_gain
from .checks import KNOWN_FAULTS, check_names, run_check_suite
from .classical import (
    default_envelope_dt,
    default_phi_dt,
    phi_to_envelope,
    seed_state,
    simulate_envelope,
    simulate_oscillators,
)
from .config import (
    DEFAULT_ORDER,
    DEFAULT_RATIO,
    RunConfig,
    load_config_file,
    parse_sweep_range,
    parse_window,
    resolve_config_path,
)
from .floquet import build_floquet_matrix
from .ode import NonFiniteStateError, TimeGrid, TimeSeries
from .params import ModelParams, derive_normal_modes, pt_parameters
from .ptsym import (
    build_h_eff,
    eigenvalues_h_eff,
    extended_pt_report,
    is_pt_symmetric,
    parity_operator,
)
from .quantum import vacuum_comparison
from .serialize import dumps_json

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


def _window_arg(text: str) -> tuple[float, float]:
    try:
        return parse_window(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _sweep_range_arg(text: str) -> tuple[float, float, int]:
    try:
        return parse_sweep_range(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _add_model_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--omega0", type=float, help="oscillator frequency")
    sub.add_argument("--omega-coupling", type=float, dest="omega_coupling",
                     help="coupling constant (default omega0/2)")
    sub.add_argument("--delta", type=float, help="modulation amplitude")
    sub.add_argument("--nu-d", type=float, dest="nu_d", help="drive frequency")
    sub.add_argument("--config", help="JSON config file (CLI flags override)")
    sub.add_argument("--out", help="output path (stdout when omitted)")


def _add_grid_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--t-end", type=float, dest="t_end", help="end time")
    sub.add_argument("--dt", type=float, help="integration step")
    sub.add_argument("--format", choices=("csv", "json"),
                     help="output format (default csv)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qaserdyn",
        description="Parametrically driven coupled-oscillator dynamics: "
                    "simulation, component reduction, PT analysis, "
                    "quantum-noise moments.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser(
        "simulate",
        help="integrate the displacement-coordinate dynamics from the "
             "standard seed (phi1 = 1e-3, rest zero)")
    _add_model_flags(sub)
    _add_grid_flags(sub)

    sub = commands.add_parser(
        "envelope",
        help="integrate the complex envelope dynamics from the standard "
             "seed mapped at t = 0")
    _add_model_flags(sub)
    _add_grid_flags(sub)
    sub.add_argument("--method", choices=("full", "rwa"),
                     help="retain counter-rotating terms (full) or drop "
                          "them (rwa); default full")

    sub = commands.add_parser(
        "floquet", help="dump the truncated component matrix as JSON")
    _add_model_flags(sub)
    sub.add_argument("--order", type=int, help="truncation order N (default 2)")

    sub = commands.add_parser(
        "pt", help="gain/coupling rates, eigenvalues and PT diagnostics")
    _add_model_flags(sub)
    sub.add_argument("--order", type=int,
                     help="also report parity residuals of the order-N "
                          "component system")

    sub = commands.add_parser(
        "sweep", help="fitted gain vs oscillator frequency")
    _add_model_flags(sub)
    sub.add_argument("--sweep-range", type=_sweep_range_arg, dest="sweep_range",
                     help="LO:HI:STEPS sweep of omega0 (default 6.5:9.5:61)")
    sub.add_argument("--window", type=_window_arg,
                     help="fit window LO:HI (default 20:80)")
    sub.add_argument("--jobs", type=int, help="worker processes (default 1)")
    sub.add_argument("--format", choices=("csv", "json"),
                     help="output format (default csv)")

    sub = commands.add_parser(
        "quantum", help="vacuum-grown occupations, closed form vs moment ODE")
    _add_model_flags(sub)
    _add_grid_flags(sub)

    sub = commands.add_parser(
        "check", help="run the cross-module invariant suite")
    _add_model_flags(sub)
    sub.add_argument("--list", action="store_true", dest="list_checks",
                     help="print check names without running")
    sub.add_argument("--inject-fault", choices=KNOWN_FAULTS,
                     dest="inject_fault", help=argparse.SUPPRESS)

    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Merge defaults, optional config file, and explicit CLI flags."""
    config = RunConfig(command=args.command)
    path = resolve_config_path(getattr(args, "config", None))
    if path is not None:
        for key, value in load_config_file(path).items():
            setattr(config, key, value)
    for key in ("omega0", "omega_coupling", "delta", "nu_d", "t_end", "dt",
                "order", "window", "method", "sweep_range", "jobs", "out",
                "format"):
        value = getattr(args, key, None)
        if value is not None:
            setattr(config, key, value)
    return config


def parse_cli(argv=None) -> RunConfig:
    """Parse argv into a validated RunConfig without executing anything."""
    args = build_parser().parse_args(argv)
    config = resolve_config(args)
    model_params(config)  # surfaces parameter validation errors early
    return config


def model_params(config: RunConfig) -> ModelParams:
    return ModelParams(
        omega0=config.omega0,
        Omega=config.coupling(),
        delta=config.delta,
        nu_d=config.nu_d,
    )


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _series_text(series: TimeSeries, fmt: str) -> str:
    if fmt == "json":
        rows = [
            [float(series.times[i])] + [float(v) for v in series.values[i]]
            for i in range(series.n_samples)
        ]
        return dumps_json({"labels": ["t", *series.labels], "rows": rows})
    return series.to_csv_text()


def cmd_simulate(config: RunConfig) -> int:
    params = model_params(config)
    dt = config.dt if config.dt is not None else default_phi_dt(params)
    grid = TimeGrid(0.0, config.t_end, dt)
    series = simulate_oscillators(params, seed_state(), grid)
    _write_output(_series_text(series, config.format), config.out)
    return EXIT_OK


def cmd_envelope(config: RunConfig) -> int:
    params = model_params(config)
    dt = config.dt if config.dt is not None else default_envelope_dt(params)
    grid = TimeGrid(0.0, config.t_end, dt)
    initial = phi_to_envelope(seed_state(), 0.0, derive_normal_modes(params))
    keep = config.method != "rwa"
    series = simulate_envelope(params, initial, grid, keep_counter_rotating=keep)
    _write_output(_series_text(series, config.format), config.out)
    return EXIT_OK


def cmd_floquet(config: RunConfig) -> int:
    params = model_params(config)
    order = config.order if config.order is not None else DEFAULT_ORDER
    fm = build_floquet_matrix(params, order)
    _write_output(dumps_json(fm.to_json_obj()), config.out)
    return EXIT_OK


def cmd_pt(config: RunConfig) -> int:
    params = model_params(config)
    modes = derive_normal_modes(params)
    pt = pt_parameters(params)
    h = build_h_eff(pt)
    phase = eigenvalues_h_eff(pt)
    residual = is_pt_symmetric(h.matrix, parity_operator(), tol=1e-15)
    report = {
        "omega0": params.omega0,
        "omega_coupling": params.Omega,
        "delta": params.delta,
        "nu_d": params.nu_d,
        "omega1": modes.omega1,
        "omega2": modes.omega2,
        "g": pt.g,
        "J": pt.J,
        "lambda": pt.lam,
        "eig_plus_re": phase.eigenvalues[0].real,
        "eig_plus_im": phase.eigenvalues[0].imag,
        "eig_minus_re": phase.eigenvalues[1].real,
        "eig_minus_im": phase.eigenvalues[1].imag,
        "phase": phase.label,
        "pt_residual": residual.residual,
        "hermiticity_residual": h.hermiticity_residual(),
    }
    if config.order is not None:
        extended = extended_pt_report(params, config.order)
        report["extended_order"] = extended.order
        report["extended_residual_swap"] = extended.swap.residual
        report["extended_residual_swap_reflect"] = extended.swap_reflect.residual
    _write_output(dumps_json(report), config.out)
    return EXIT_OK


def cmd_sweep(config: RunConfig) -> int:
    ratio = config.coupling() / config.omega0 \
        if config.omega_coupling is not None else DEFAULT_RATIO
    result = sweep_gain(
        config.sweep_range,
        ratio=ratio,
        delta=config.delta,
        nu_d=config.nu_d,
        window=config.window,
        jobs=config.jobs,
    )
    if config.format == "json":
        rows = [
            [r.omega0, r.fitted_rate, r.analytic_lambda, r.detuning, r.residual]
            for r in result.rows
        ]
        text = dumps_json({
            "labels": ["omega0", "fitted_rate", "analytic_lambda",
                       "detuning", "residual"],
            "rows": rows,
        })
    else:
        buf = io.StringIO()
        result.to_csv(buf)
        text = buf.getvalue()
    _write_output(text, config.out)
    return EXIT_OK


def cmd_quantum(config: RunConfig) -> int:
    params = model_params(config)
    dt = config.dt if config.dt is not None else default_envelope_dt(params)
    grid = TimeGrid(0.0, config.t_end, dt)
    series = vacuum_comparison(params, grid)
    _write_output(_series_text(series, config.format), config.out)
    return EXIT_OK


def cmd_check(config: RunConfig, list_checks: bool, inject_fault: str | None) -> int:
    if list_checks:
        _write_output("\n".join(check_names()) + "\n", config.out)
        return EXIT_OK
    report = run_check_suite(model_params(config), inject_fault=inject_fault)
    _write_output(dumps_json(report), config.out)
    return EXIT_OK if report["all_passed"] else EXIT_CHECK_FAILED


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = resolve_config(args)
        if args.command == "simulate":
            return cmd_simulate(config)
        if args.command == "envelope":
            return cmd_envelope(config)
        if args.command == "floquet":
            return cmd_floquet(config)
        if args.command == "pt":
            return cmd_pt(config)
        if args.command == "sweep":
            return cmd_sweep(config)
        if args.command == "quantum":
            return cmd_quantum(config)
        if args.command == "check":
            return cmd_check(config, args.list_checks, args.inject_fault)
        parser.error(f"unknown command {args.command!r}")
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NonFiniteStateError as exc:
        print(f"numerical abort: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except FitFailure as exc:
        print(f"fit failure: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
