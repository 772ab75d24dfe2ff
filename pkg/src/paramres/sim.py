"""Reference integration of the modulated-damping oscillator."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import InitialState, OscillatorParams
from .errors import DivergenceError, ValidationError

DEFAULT_DT = 1e-3
DIVERGENCE_BOUND = 1e12


@dataclass(frozen=True)
class TimeGrid:
    """Uniform sample grid ``t_start + i*dt`` for ``i = 0 .. n-1``."""

    t_start: float
    t_end: float
    dt: float

    def __post_init__(self):
        if not (math.isfinite(self.t_start) and math.isfinite(self.t_end)):
            raise ValidationError("grid bounds must be finite")
        if not (math.isfinite(self.dt) and self.dt > 0.0):
            raise ValidationError(f"dt must be positive, got {self.dt}")
        if not self.t_end > self.t_start:
            raise ValidationError("t_end must exceed t_start")

    @classmethod
    def span(cls, t_end: float, dt: float = DEFAULT_DT) -> "TimeGrid":
        return cls(0.0, t_end, dt)

    @property
    def n(self) -> int:
        # tolerate t_end/dt landing a hair below an integer
        return int(math.floor((self.t_end - self.t_start) / self.dt + 1e-9)) + 1

    @property
    def times(self) -> np.ndarray:
        return self.t_start + self.dt * np.arange(self.n)


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Real samples on a :class:`TimeGrid`."""

    grid: TimeGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1 or values.size != self.grid.n:
            raise ValidationError(
                f"expected {self.grid.n} samples, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValidationError("time series contains non-finite samples")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def t(self) -> np.ndarray:
        return self.grid.times

    @property
    def dt(self) -> float:
        return self.grid.dt

    def __len__(self):
        return self.values.size

    def slice(self, t_lo: float, t_hi: float) -> "TimeSeries":
        """Samples with ``t_lo <= t <= t_hi`` (to within half a step)."""
        t = self.t
        half = 0.5 * self.dt
        idx = np.flatnonzero((t >= t_lo - half) & (t <= t_hi + half))
        if idx.size < 2:
            raise ValidationError(f"[{t_lo}, {t_hi}] holds fewer than two samples")
        grid = TimeGrid(float(t[idx[0]]), float(t[idx[-1]]), self.dt)
        return TimeSeries(grid, self.values[idx[0]:idx[0] + grid.n])

    def decimate(self, factor: int) -> "TimeSeries":
        if factor < 1:
            raise ValidationError("decimation factor must be >= 1")
        if factor == 1:
            return self
        values = self.values[::factor]
        t_last = self.grid.t_start + (values.size - 1) * factor * self.dt
        return TimeSeries(TimeGrid(self.grid.t_start, t_last, factor * self.dt), values)


def integrate_states(params: OscillatorParams, ic: InitialState,
                     grid: TimeGrid) -> tuple[np.ndarray, np.ndarray]:
    """Classical RK4 on ``(x, x')``; returns displacement and velocity samples.

    The modulated coefficient is evaluated at each stage time. Raises
    :class:`DivergenceError` once ``|x|`` or ``|x'|`` exceeds
    ``DIVERGENCE_BOUND``.
    """
    n = grid.n
    h = grid.dt
    t0 = grid.t_start
    c0 = -2.0 * params.sigma
    k = params.k_amp
    w = params.cap_omega
    s = params.stiffness
    cos = math.cos

    xs = np.empty(n)
    vs = np.empty(n)
    x = float(ic.x0)
    v = float(ic.v0)
    xs[0] = x
    vs[0] = v
    h2 = 0.5 * h
    h6 = h / 6.0
    for i in range(1, n):
        t = t0 + (i - 1) * h
        cm = c0 + k * cos(w * (t + h2))
        a1 = -(c0 + k * cos(w * t)) * v - s * x
        xb = x + h2 * v
        vb = v + h2 * a1
        a2 = -cm * vb - s * xb
        xc = x + h2 * vb
        vc = v + h2 * a2
        a3 = -cm * vc - s * xc
        xd = x + h * vc
        vd = v + h * a3
        a4 = -(c0 + k * cos(w * (t + h))) * vd - s * xd
        x = x + h6 * (v + 2.0 * vb + 2.0 * vc + vd)
        v = v + h6 * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
        if not (abs(x) <= DIVERGENCE_BOUND and abs(v) <= DIVERGENCE_BOUND):
            t_blow = t0 + i * h
            raise DivergenceError(f"state exceeded {DIVERGENCE_BOUND:g} at t={t_blow:.6g} s",
                                  t_blow)
        xs[i] = x
        vs[i] = v
    return xs, vs


def integrate(params: OscillatorParams, ic: InitialState, grid: TimeGrid) -> TimeSeries:
    """Integrate the modulated oscillator and return ``x(t)``."""
    xs, _ = integrate_states(params, ic, grid)
    return TimeSeries(grid, xs)


def unforced_exact(params: OscillatorParams, ic: InitialState, grid: TimeGrid) -> TimeSeries:
    """Closed-form response with the modulation switched off (``K`` ignored).

    As with :func:`integrate`, the initial state applies at ``grid.t_start``.
    """
    t = grid.times - grid.t_start
    s, w = params.sigma, params.omega
    x = np.exp(s * t) * (ic.x0 * np.cos(w * t) + (ic.v0 - s * ic.x0) / w * np.sin(w * t))
    return TimeSeries(grid, x)
