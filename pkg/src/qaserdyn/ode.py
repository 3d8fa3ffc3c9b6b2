"""Fixed-step RK4 integration for linear time-dependent systems.

One classical 4th-order Runge-Kutta engine serves every simulation module:
real systems directly, complex systems through their interleaved real-pair
memory view. No adaptive stepping; step sizes are certified by halving
studies (``convergence_check``).
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .serialize import fmt_float


class NonFiniteStateError(RuntimeError):
    """Integration produced a non-finite (overflowed or NaN) state."""

    def __init__(self, time: float):
        super().__init__(f"non-finite state at t={time!r}")
        self.time = float(time)


@dataclass(frozen=True)
class TimeGrid:
    """Uniform sampling grid over [t_start, t_end].

    ``dt`` is the requested step; the effective step is span/n_steps with
    n_steps = round(span/dt), so the final sample always lands on t_end.
    """

    t_start: float
    t_end: float
    dt: float

    def __post_init__(self):
        for name in ("t_start", "t_end", "dt"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if self.t_end <= self.t_start:
            raise ValueError(
                f"t_end must exceed t_start, got [{self.t_start}, {self.t_end}]"
            )
        if self.dt <= 0.0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if (self.t_end - self.t_start) / self.dt < 1.0:
            raise ValueError(
                f"grid must contain at least one step of dt={self.dt} "
                f"in [{self.t_start}, {self.t_end}]"
            )

    @property
    def n_steps(self) -> int:
        return max(1, round((self.t_end - self.t_start) / self.dt))

    @property
    def step(self) -> float:
        """Effective step size (span divided evenly into n_steps)."""
        return (self.t_end - self.t_start) / self.n_steps

    def times(self) -> np.ndarray:
        return self.t_start + np.arange(self.n_steps + 1) * self.step

    def refined(self, factor: int) -> "TimeGrid":
        """Same span with the step divided by ``factor``."""
        return TimeGrid(self.t_start, self.t_end, self.step / factor)


@dataclass(frozen=True)
class TimeSeries:
    """Sampled trajectory: strictly increasing times, labeled value columns."""

    times: np.ndarray
    values: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self):
        times = np.asarray(self.times, dtype=np.float64)
        values = np.asarray(self.values)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "labels", tuple(str(l) for l in self.labels))
        if times.ndim != 1:
            raise ValueError("times must be one-dimensional")
        if values.ndim != 2 or values.shape[0] != times.shape[0]:
            raise ValueError(
                f"values must be (n_samples, n_columns), got {values.shape} "
                f"for {times.shape[0]} samples"
            )
        if values.shape[1] != len(self.labels):
            raise ValueError(
                f"{values.shape[1]} columns but {len(self.labels)} labels"
            )
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"labels must be unique, got {self.labels}")
        if times.shape[0] > 1 and not np.all(np.diff(times) > 0.0):
            raise ValueError("times must be strictly increasing")

    @property
    def n_samples(self) -> int:
        return self.times.shape[0]

    def column(self, label: str) -> np.ndarray:
        try:
            idx = self.labels.index(label)
        except ValueError:
            raise KeyError(
                f"no column {label!r}; have {', '.join(self.labels)}"
            ) from None
        return self.values[:, idx]

    def split_complex(self) -> "TimeSeries":
        """Real view of a complex-valued series (re_/im_ column pairs)."""
        if not np.iscomplexobj(self.values):
            return self
        labels: list[str] = []
        cols: list[np.ndarray] = []
        for i, label in enumerate(self.labels):
            labels.append(f"re_{label}")
            cols.append(self.values[:, i].real)
            labels.append(f"im_{label}")
            cols.append(self.values[:, i].imag)
        return TimeSeries(self.times, np.column_stack(cols), tuple(labels))

    def to_csv(self, fh) -> None:
        """Write CSV: header row, time first, %.17g floats, LF endings."""
        if np.iscomplexobj(self.values):
            raise ValueError("complex series cannot be written; use split_complex()")
        fh.write(",".join(("t",) + self.labels) + "\n")
        for i in range(self.n_samples):
            row = [fmt_float(self.times[i])]
            row.extend(fmt_float(v) for v in self.values[i])
            fh.write(",".join(row) + "\n")

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        self.to_csv(buf)
        return buf.getvalue()


def integrate(
    rhs: Callable[[np.ndarray, float], np.ndarray],
    initial: Sequence[complex] | np.ndarray,
    grid: TimeGrid,
    labels: Sequence[str] | None = None,
) -> TimeSeries:
    """RK4-integrate dy/dt = rhs(y, t) over the grid.

    Samples every grid point including both endpoints. Complex initial
    states are integrated through their interleaved real-pair view, so the
    same real-valued core serves both cases. Deterministic: identical inputs
    give bit-identical output. Raises NonFiniteStateError as soon as a
    sample stops being finite.
    """
    y0 = np.atleast_1d(np.asarray(initial))
    is_complex = np.iscomplexobj(y0)
    y = y0.astype(np.complex128 if is_complex else np.float64).copy()

    if is_complex:
        user_rhs = rhs

        def rhs(yr: np.ndarray, t: float) -> np.ndarray:
            dy = np.asarray(user_rhs(yr.view(np.complex128), t), dtype=np.complex128)
            return dy.view(np.float64)

        y = y.view(np.float64)

    h = grid.step
    n = grid.n_steps
    t0 = grid.t_start
    half = 0.5 * h
    sixth = h / 6.0

    out = np.empty((n + 1, y.shape[0]), dtype=np.float64)
    times = np.empty(n + 1, dtype=np.float64)
    out[0] = y
    times[0] = t0
    if not np.all(np.isfinite(y)):
        raise NonFiniteStateError(t0)

    for k in range(n):
        t = t0 + k * h
        k1 = np.asarray(rhs(y, t), dtype=np.float64)
        k2 = np.asarray(rhs(y + half * k1, t + half), dtype=np.float64)
        k3 = np.asarray(rhs(y + half * k2, t + half), dtype=np.float64)
        k4 = np.asarray(rhs(y + h * k3, t + h), dtype=np.float64)
        y = y + sixth * (k1 + 2.0 * (k2 + k3) + k4)
        times[k + 1] = t0 + (k + 1) * h
        out[k + 1] = y
        if not np.all(np.isfinite(y)):
            raise NonFiniteStateError(times[k + 1])

    if is_complex:
        values = out.view(np.complex128)
    else:
        values = out
    if labels is None:
        labels = tuple(f"y{i}" for i in range(values.shape[1]))
    return TimeSeries(times, values, tuple(labels))


def convergence_check(
    rhs: Callable[[np.ndarray, float], np.ndarray],
    initial: Sequence[complex] | np.ndarray,
    grid: TimeGrid,
    refinements: int,
) -> np.ndarray:
    """Endpoint differences between successive step halvings.

    Runs the integration at step, step/2, ..., step/2^refinements and
    returns the max-abs endpoint difference between consecutive runs
    (``refinements`` entries). For a 4th-order method on smooth problems
    consecutive entries shrink by about 16x; used to certify step sizes.
    """
    if refinements < 2:
        raise ValueError(f"refinements must be >= 2, got {refinements}")
    endpoints = []
    for j in range(refinements + 1):
        series = integrate(rhs, initial, grid.refined(2**j))
        endpoints.append(series.values[-1])
    diffs = [
        float(np.max(np.abs(endpoints[j] - endpoints[j + 1])))
        for j in range(refinements)
    ]
    return np.asarray(diffs)
