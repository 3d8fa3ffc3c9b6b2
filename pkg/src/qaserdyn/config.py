"""Run configuration: defaults, config-file loading, validation.

Defaults place the drive at combination resonance for the reference
parameter set (coupling ratio 1/2, drive frequency 2): omega0 = 7.93624 is
resonant_omega0(0.5, 2.0) to six digits. Precedence is command line over
config file over defaults; config files are JSON objects whose keys match
the flag names with unknown keys rejected.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields

ENV_CONFIG_PATH = "QASER_DYN_CONFIG"

DEFAULT_OMEGA0 = 7.93624
DEFAULT_RATIO = 0.5
DEFAULT_DELTA = 0.4
DEFAULT_NU_D = 2.0
DEFAULT_T_END = 100.0
DEFAULT_WINDOW = (20.0, 80.0)
DEFAULT_ORDER = 2
DEFAULT_SWEEP_RANGE = (6.5, 9.5, 61)
DEFAULT_ENVELOPE_METHOD = "full"
DEFAULT_FORMAT = "csv"


@dataclass
class RunConfig:
    """Resolved options of one CLI invocation."""

    command: str
    omega0: float = DEFAULT_OMEGA0
    omega_coupling: float | None = None  # None -> omega0 * DEFAULT_RATIO
    delta: float = DEFAULT_DELTA
    nu_d: float = DEFAULT_NU_D
    t_end: float = DEFAULT_T_END
    dt: float | None = None  # None -> per-command default step
    order: int | None = None  # None -> per-command default / not requested
    window: tuple[float, float] = DEFAULT_WINDOW
    method: str = DEFAULT_ENVELOPE_METHOD
    sweep_range: tuple[float, float, int] = DEFAULT_SWEEP_RANGE
    jobs: int = 1
    out: str | None = None
    format: str = DEFAULT_FORMAT

    def coupling(self) -> float:
        if self.omega_coupling is None:
            return self.omega0 * DEFAULT_RATIO
        return self.omega_coupling


_CONFIG_KEYS = {f.name for f in fields(RunConfig)} - {"command"}


def parse_window(text: str) -> tuple[float, float]:
    """Parse 'LO:HI' into a float pair with lo < hi."""
    parts = text.split(":")
    if len(parts) != 2:
        raise ValueError(f"window must be LO:HI, got {text!r}")
    lo, hi = float(parts[0]), float(parts[1])
    if not lo < hi:
        raise ValueError(f"window must satisfy LO < HI, got {text!r}")
    return lo, hi


def parse_sweep_range(text: str) -> tuple[float, float, int]:
    """Parse 'LO:HI:STEPS' into (float, float, int) with lo < hi, steps >= 2."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"sweep range must be LO:HI:STEPS, got {text!r}")
    lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    if not lo < hi:
        raise ValueError(f"sweep range must satisfy LO < HI, got {text!r}")
    if steps < 2:
        raise ValueError(f"sweep range needs at least 2 steps, got {text!r}")
    return lo, hi, steps


def load_config_file(path: str) -> dict:
    """Read a JSON config file, validating keys and parsing string ranges."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"config file {path}: invalid JSON ({exc})") from exc
    if not isinstance(raw, dict):
        raise ValueError(f"config file {path}: top level must be an object")
    unknown = set(raw) - _CONFIG_KEYS
    if unknown:
        raise ValueError(
            f"config file {path}: unknown keys {sorted(unknown)}; "
            f"allowed: {sorted(_CONFIG_KEYS)}"
        )
    out: dict = {}
    for key, value in raw.items():
        if key == "window":
            out[key] = parse_window(str(value))
        elif key == "sweep_range":
            out[key] = parse_sweep_range(str(value))
        elif key in ("out", "format", "method"):
            out[key] = str(value)
        elif key in ("order", "jobs"):
            out[key] = int(value)
        else:
            out[key] = float(value)
    return out


def resolve_config_path(cli_value: str | None) -> str | None:
    """--config wins; otherwise the optional environment fallback."""
    if cli_value is not None:
        return cli_value
    return os.environ.get(ENV_CONFIG_PATH) or None
