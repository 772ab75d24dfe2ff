"""Damping identification from sampled responses.

Least-squares Prony fits over sliding windows give a time-resolved damping
ratio; a peak-interpolated envelope and a few periodogram helpers turn the
resulting traces into scalar signatures (modulation period, growth rate).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np
from scipy.interpolate import PchipInterpolator
from scipy.optimize import minimize_scalar
from scipy.signal import find_peaks, lombscargle

from .errors import (EnvelopeError, IllConditionedError, NumericalError,
                     UndefinedRatioError, ValidationError)
from .sim import TimeGrid, TimeSeries

log = logging.getLogger(__name__)

DEFAULT_ORDER = 2
MAX_ORDER = 12
DEFAULT_STRIDE = 0.25
# windows span this many carrier periods unless told otherwise
DEFAULT_WINDOW_PERIODS = 2.0
# accepted band around the global dominant frequency
FREQUENCY_BAND = 0.30
# target samples per carrier period after decimation inside sliding_damping
SAMPLES_PER_PERIOD = 64


@dataclass(frozen=True)
class ModeEstimate:
    """One identified mode ``amplitude * exp(lambda_re*t) * cos(lambda_im*t + phase)``."""

    lambda_re: float
    lambda_im: float
    amplitude: float
    phase: float
    energy: float

    @property
    def pole(self) -> complex:
        return complex(self.lambda_re, self.lambda_im)


@dataclass(frozen=True, eq=False)
class DampingTrace:
    t_center: np.ndarray
    zeta_hat: np.ndarray
    omega_hat: np.ndarray

    def __len__(self):
        return self.t_center.size

    def __iter__(self) -> Iterator[tuple[float, float, float]]:
        return zip(self.t_center.tolist(), self.zeta_hat.tolist(), self.omega_hat.tolist())


def prony_fit(window: TimeSeries, model_order: int = DEFAULT_ORDER,
              max_growth: float = 50.0) -> list[ModeEstimate]:
    """Fit ``model_order`` complex exponentials to a uniformly sampled window.

    Poles come from the roots of a least-squares linear predictor; complex
    amplitudes from a least-squares Vandermonde fit. Conjugate pairs are
    collapsed onto the member with positive frequency and the list is sorted
    by reconstruction energy.

    Parameters
    ----------
    window : TimeSeries
        Samples to fit; needs at least ``2*model_order + 1`` of them.
    model_order : int
        Number of complex exponentials (2 per oscillatory mode).
    max_growth : float
        Roots implying a growth rate above this (1/s), and roots at the
        origin, are discarded with a warning.

    Raises
    ------
    IllConditionedError
        If the prediction matrix is rank deficient (e.g. a zero signal).
    """
    p = int(model_order)
    if not 1 <= p <= MAX_ORDER:
        raise ValidationError(f"model_order must be in [1, {MAX_ORDER}], got {model_order}")
    x = window.values
    n = x.size
    if n < 2 * p + 1:
        raise ValidationError(f"window has {n} samples, needs at least {2 * p + 1}")
    dt = window.dt

    hankel = np.column_stack([x[p - 1 - k:n - 1 - k] for k in range(p)])
    coeffs, _, rank, _ = np.linalg.lstsq(hankel, x[p:], rcond=None)
    if rank < p:
        raise IllConditionedError(f"prediction matrix has rank {rank} < {p}")

    z = np.roots(np.concatenate(([1.0], -coeffs)))
    bound = math.exp(max_growth * dt)
    keep = (np.abs(z) > 0.0) & (np.abs(z) <= bound)
    if not np.all(keep):
        log.warning("discarding %d root(s) outside the radius bound", int(np.sum(~keep)))
        z = z[keep]
    if z.size == 0:
        raise IllConditionedError("no admissible roots in window")

    idx = np.arange(n)
    vander = z[np.newaxis, :] ** idx[:, np.newaxis]
    h, *_ = np.linalg.lstsq(vander, x.astype(complex), rcond=None)
    lam = np.log(z.astype(complex)) / dt

    # conjugate partners share one slot; real roots stand alone
    imag_tol = 1e-9 * np.maximum(np.abs(lam), 1.0)
    modes = []
    energies = []
    for k in range(z.size):
        if lam[k].imag < -imag_tol[k]:
            continue
        if lam[k].imag > imag_tol[k]:
            comp = 2.0 * np.real(h[k] * vander[:, k])
            amp = 2.0 * abs(h[k])
            im = lam[k].imag
        else:
            comp = np.real(h[k] * vander[:, k])
            amp = abs(h[k])
            im = 0.0
        modes.append((lam[k].real, im, amp, float(np.angle(h[k]))))
        energies.append(float(np.dot(comp, comp)))
    total = sum(energies)
    out = [ModeEstimate(re, im, amp, ph, (e / total) if total > 0.0 else 0.0)
           for (re, im, amp, ph), e in zip(modes, energies)]
    out.sort(key=lambda m: m.energy, reverse=True)
    return out


def damping_ratio_of(mode: ModeEstimate) -> float:
    mag = math.hypot(mode.lambda_re, mode.lambda_im)
    if mag == 0.0:
        raise UndefinedRatioError("pole at the origin has no damping ratio")
    return -mode.lambda_re / mag


def dominant_frequency(ts: TimeSeries, pad: int = 8) -> float:
    """Angular frequency of the largest spectral peak (mean removed)."""
    x = ts.values - ts.values.mean()
    if not np.any(x):
        raise IllConditionedError("constant signal has no dominant frequency")
    nfft = 1 << int(math.ceil(math.log2(pad * x.size)))
    spec = np.abs(np.fft.rfft(x * np.hanning(x.size), nfft))
    spec[0] = 0.0
    k = int(np.argmax(spec))
    # parabolic refinement on the log spectrum
    if 0 < k < spec.size - 1 and spec[k - 1] > 0 and spec[k + 1] > 0:
        a, b, c = np.log(spec[k - 1:k + 2])
        denom = a - 2.0 * b + c
        if denom != 0.0:
            k = k + 0.5 * (a - c) / denom
    return 2.0 * math.pi * k / (nfft * ts.dt)


def _decimation_factor(dt, omega):
    period = 2.0 * math.pi / omega
    return max(1, int(period / (SAMPLES_PER_PERIOD * dt)))


def sliding_damping(ts: TimeSeries, window_len: Optional[float] = None,
                    stride: float = DEFAULT_STRIDE,
                    model_order: int = DEFAULT_ORDER) -> DampingTrace:
    """Damping ratio and frequency of the dominant mode in sliding windows.

    Candidate modes must lie within 30% of the record's dominant frequency;
    among those the most energetic wins, ties going to the one closest to
    the previous window's frequency. Windows whose fit fails are skipped.
    Records sampled much finer than needed are decimated to roughly
    ``SAMPLES_PER_PERIOD`` samples per carrier period first.
    """
    if not stride > 0.0:
        raise ValidationError(f"stride must be positive, got {stride}")
    omega_g = dominant_frequency(ts)
    if window_len is None:
        window_len = DEFAULT_WINDOW_PERIODS * 2.0 * math.pi / omega_g
    duration = ts.grid.t_end - ts.grid.t_start
    if not 0.0 < window_len < duration:
        raise ValidationError(f"window_len must lie in (0, {duration:g}), got {window_len}")

    series = ts.decimate(_decimation_factor(ts.dt, omega_g))
    x, t, dt = series.values, series.t, series.dt
    n_win = int(round(window_len / dt)) + 1
    step = max(1, int(round(stride / dt)))
    n_win = min(n_win, x.size)

    centers, zetas, omegas = [], [], []
    prev = omega_g
    for start in range(0, x.size - n_win + 1, step):
        grid = TimeGrid(float(t[start]), float(t[start]) + (n_win - 1) * dt, dt)
        try:
            modes = prony_fit(TimeSeries(grid, x[start:start + n_win]), model_order)
        except NumericalError as exc:
            log.debug("window at t=%.3f skipped: %s", t[start], exc)
            continue
        cands = [m for m in modes
                 if m.lambda_im > 0.0 and abs(m.lambda_im - omega_g) <= FREQUENCY_BAND * omega_g]
        if not cands:
            continue
        best = max(cands, key=lambda m: (round(m.energy, 12), -abs(m.lambda_im - prev)))
        try:
            zeta = damping_ratio_of(best)
        except UndefinedRatioError:
            continue
        centers.append(float(t[start]) + 0.5 * (n_win - 1) * dt)
        zetas.append(zeta)
        omegas.append(best.lambda_im)
        prev = best.lambda_im
    return DampingTrace(np.array(centers), np.array(zetas), np.array(omegas))


def envelope(ts: TimeSeries) -> TimeSeries:
    """Upper envelope from the peaks of ``|x|`` joined by monotone cubics.

    Before the first and after the last peak the envelope is extended
    log-linearly through the two nearest peaks.
    """
    x = ts.values
    signs = np.signbit(x[x != 0.0])
    if np.count_nonzero(signs[1:] != signs[:-1]) < 3:
        raise EnvelopeError("signal needs at least three sign changes")
    mag = np.abs(x)
    peaks, _ = find_peaks(mag)
    if peaks.size < 2:
        raise EnvelopeError("fewer than two peaks in |x|")
    t = ts.t
    interp = PchipInterpolator(t[peaks], mag[peaks], extrapolate=False)
    env = interp(t)
    tp, vp = t[peaks], mag[peaks]
    for side, (i, j) in (("lo", (0, 1)), ("hi", (-2, -1))):
        mask = t < tp[0] if side == "lo" else t > tp[-1]
        if np.any(mask):
            rate = math.log(vp[j] / vp[i]) / (tp[j] - tp[i])
            anchor = 0 if side == "lo" else -1
            env[mask] = vp[anchor] * np.exp(rate * (t[mask] - tp[anchor]))
    return TimeSeries(ts.grid, env)


def dominant_period(t, y, omega_min: Optional[float] = None,
                    omega_max: Optional[float] = None, n_freq: int = 4000) -> float:
    """Period of the strongest sinusoid in ``y(t)`` (samples may have gaps).

    Uses a Lomb-Scargle periodogram on the mean-removed data, refined by a
    bounded scalar search around the grid maximum.
    """
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    if t.size < 4:
        raise ValidationError("need at least four samples")
    y = y - y.mean()
    if not np.any(y):
        raise IllConditionedError("constant data has no period")
    span = t[-1] - t[0]
    lo = omega_min if omega_min is not None else 2.0 * math.pi / span
    hi = omega_max if omega_max is not None else math.pi / np.median(np.diff(t))
    if not hi > lo:
        raise ValidationError(f"record too short to resolve frequencies below {hi:.4g} rad/s")
    freqs = np.linspace(lo, hi, n_freq)
    power = lombscargle(t, y, freqs)
    k = int(np.argmax(power))
    a = freqs[max(k - 1, 0)]
    b = freqs[min(k + 1, n_freq - 1)]
    res = minimize_scalar(lambda f: -float(np.ravel(lombscargle(t, y, np.atleast_1d(f)))[0]),
                          bounds=(a, b), method="bounded",
                          options={"xatol": 1e-10 * hi})
    return 2.0 * math.pi / float(res.x)


def fit_growth_rate(ts: TimeSeries, t_lo: Optional[float] = None,
                    t_hi: Optional[float] = None) -> float:
    """Slope of ``log(envelope)`` over ``[t_lo, t_hi]`` by least squares (1/s)."""
    env = envelope(ts)
    t = env.t
    lo = t[0] if t_lo is None else t_lo
    hi = t[-1] if t_hi is None else t_hi
    mask = (t >= lo) & (t <= hi)
    if np.count_nonzero(mask) < 2:
        raise ValidationError(f"no envelope samples in [{lo}, {hi}]")
    return float(np.polyfit(t[mask], np.log(env.values[mask]), 1)[0])


def modulation_frequency(ts: TimeSeries, omega_max: Optional[float] = None) -> float:
    """Angular frequency of the periodic part of ``log(envelope)``.

    The linear trend (overall decay or growth) is removed first; the search
    stops below ``omega_max`` (default: a quarter of the carrier frequency).
    """
    env = envelope(ts)
    if omega_max is None:
        omega_max = 0.25 * dominant_frequency(ts)
    t = env.t
    step = max(1, t.size // 4000)
    t, y = t[::step], np.log(env.values[::step])
    y = y - np.polyval(np.polyfit(t, y, 1), t)
    return 2.0 * math.pi / dominant_period(t, y, omega_max=omega_max)
