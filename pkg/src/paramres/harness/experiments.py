"""Experiment drivers behind the CLI subcommands.

Each ``run_*`` function takes an :class:`ExperimentConfig`, writes its
outputs under ``cfg.out_dir()`` and returns what it computed, so tests and
scripts can use the results without re-reading files.
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Optional

import numpy as np

from .. import core, mms, modal
from ..errors import CoefficientDomainError, NumericalError, ParamresError, ValidationError
from ..mms import CaseTag
from ..sim import TimeSeries, integrate
from . import svg
from .config import ExperimentConfig
from .io import write_csv, write_json

log = logging.getLogger(__name__)


@dataclass
class ComparisonReport:
    case: str
    discriminant: float
    rel_rms: Optional[float]
    rms: Optional[float]
    max_abs: Optional[float]
    max_envelope_error: Optional[float]
    signatures: dict = field(default_factory=dict)
    mms_available: bool = True
    warnings: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def _path(cfg, name):
    return os.path.join(cfg.out_dir(), name)


def error_metrics(x_true: np.ndarray, x_approx: np.ndarray) -> dict:
    """Absolute/relative RMS and max-abs error of ``x_approx`` against ``x_true``."""
    err = np.asarray(x_approx) - np.asarray(x_true)
    rms = float(np.sqrt(np.mean(err ** 2)))
    ref = float(np.sqrt(np.mean(np.asarray(x_true) ** 2)))
    return {"rms": rms, "rel_rms": rms / ref if ref > 0 else math.inf,
            "max_abs": float(np.max(np.abs(err)))}


def run_simulate(cfg: ExperimentConfig) -> TimeSeries:
    params = cfg.params()
    ts = integrate(params, cfg.initial_state(params), cfg.grid())
    write_csv(_path(cfg, "simulate.csv"), ["t", "x"], [ts.t, ts.values])
    return ts


def run_mms(cfg: ExperimentConfig):
    params = cfg.params()
    case, sol, ts = mms.evaluate(params, cfg.initial_state(params), cfg.grid())
    write_csv(_path(cfg, "mms.csv"), ["t", "x_mms"], [ts.t, ts.values])
    info = {"case": case.tag.value, "discriminant": case.discriminant,
            "solution": sol.to_dict() if sol is not None else None}
    if case.tag is CaseTag.PRINCIPAL3:
        info["branch"] = 1 if params.detuning >= 0 else -1
    write_json(_path(cfg, "mms.json"), info)
    return case, sol, ts


def _signatures(params, case, sol, x_true: TimeSeries, cfg) -> dict:
    """Predicted and measured scalar features of the regime."""
    sig = {}
    tag = case.tag
    t_end = x_true.grid.t_end
    try:
        if tag is CaseTag.PRINCIPAL1:
            sig["beat_frequency_predicted"] = sol.omega_k if sol else math.sqrt(case.discriminant)
            sig["beat_frequency_measured"] = modal.modulation_frequency(x_true)
        elif tag is CaseTag.ZEROTH:
            sig["modulation_period_predicted"] = 2.0 * math.pi / params.cap_omega
            trace = modal.sliding_damping(x_true, cfg.window, cfg.stride, cfg.order)
            sig["modulation_period_measured"] = modal.dominant_period(trace.t_center,
                                                                      trace.zeta_hat)
        else:
            if tag is CaseTag.PRINCIPAL2:
                sig["growth_rate_predicted"] = mms.case2_growth_rate(params)
            else:
                sig["growth_rate_predicted"] = params.sigma
            sig["growth_rate_measured"] = modal.fit_growth_rate(x_true, t_end / 3.0, t_end)
    except ParamresError as exc:
        sig["measure_error"] = str(exc)
    return sig


def run_compare(cfg: ExperimentConfig) -> ComparisonReport:
    params = cfg.params()
    ic = cfg.initial_state(params)
    grid = cfg.grid()
    x_true = integrate(params, ic, grid)
    warnings = []
    try:
        case, sol, x_mms = mms.evaluate(params, ic, grid)
    except CoefficientDomainError as exc:
        case, sol, x_mms = mms.classify(params), None, None
        warnings.append(f"coefficient-domain error, simulation only: {exc}")
        log.warning(warnings[-1])

    if x_mms is not None:
        m = error_metrics(x_true.values, x_mms.values)
        try:
            env_err = float(np.max(np.abs(modal.envelope(x_true).values
                                          - modal.envelope(x_mms).values)))
        except ParamresError as exc:
            env_err = None
            warnings.append(f"envelope unavailable: {exc}")
        abs_err = np.abs(x_mms.values - x_true.values)
        write_csv(_path(cfg, "compare.csv"), ["t", "x_true", "x_mms", "abs_err"],
                  [x_true.t, x_true.values, x_mms.values, abs_err])
    else:
        m = {"rms": None, "rel_rms": None, "max_abs": None}
        env_err = None
        nan = np.full(x_true.values.size, math.nan)
        write_csv(_path(cfg, "compare.csv"), ["t", "x_true", "x_mms", "abs_err"],
                  [x_true.t, x_true.values, nan, nan])

    report = ComparisonReport(
        case=case.tag.value, discriminant=case.discriminant,
        rel_rms=m["rel_rms"], rms=m["rms"], max_abs=m["max_abs"],
        max_envelope_error=env_err,
        signatures=_signatures(params, case, sol, x_true, cfg),
        mms_available=x_mms is not None, warnings=warnings)
    write_json(_path(cfg, "compare.json"), report.to_dict())
    return report


def run_damping(cfg: ExperimentConfig) -> modal.DampingTrace:
    params = cfg.params()
    ts = integrate(params, cfg.initial_state(params), cfg.grid())
    trace = modal.sliding_damping(ts, cfg.window, cfg.stride, cfg.order)
    write_csv(_path(cfg, "damping.csv"), ["t_center", "zeta_hat", "omega_hat"],
              [trace.t_center, trace.zeta_hat, trace.omega_hat])
    return trace


def _sweep_point(cfg: ExperimentConfig, cap_omega: float, measure: bool) -> tuple:
    params = cfg.params(cap_omega)
    case = mms.classify(params)
    tag = case.tag
    flag = "ok"
    if tag is CaseTag.PRINCIPAL1:
        predicted = math.sqrt(case.discriminant)
    elif tag is CaseTag.PRINCIPAL2:
        predicted = mms.case2_growth_rate(params)
    elif tag is CaseTag.ZEROTH:
        predicted = params.cap_omega
    else:
        predicted = params.sigma
    measured = math.nan
    if measure:
        try:
            x = integrate(params, cfg.initial_state(params), cfg.grid())
            t_end = x.grid.t_end
            if tag is CaseTag.PRINCIPAL1:
                measured = modal.modulation_frequency(x)
            elif tag is CaseTag.ZEROTH:
                trace = modal.sliding_damping(x, cfg.window, cfg.stride, cfg.order)
                measured = 2.0 * math.pi / modal.dominant_period(trace.t_center, trace.zeta_hat)
            else:
                measured = modal.fit_growth_rate(x, t_end / 3.0, t_end)
        except NumericalError as exc:
            flag = type(exc).__name__
    return cap_omega, tag.value, case.discriminant, predicted, measured, flag


def run_sweep(cfg: ExperimentConfig, omega_min: Optional[float] = None,
              omega_max: Optional[float] = None, steps: Optional[int] = None,
              measure: bool = True) -> list[tuple]:
    """Classify (and optionally simulate) each point of a uniform Omega grid.

    Rows are ``(omega_cap, case, discriminant, predicted_rate, measured_rate,
    flag)``. The predicted rate is the beat frequency in Case 1, the growth
    exponent in Case 2, ``Omega`` in the zero-th order window and ``sigma``
    elsewhere; the measured rate is the same quantity taken from simulation.
    """
    lo = cfg.omega_min if omega_min is None else omega_min
    hi = cfg.omega_max if omega_max is None else omega_max
    n = int(cfg.steps if steps is None else steps)
    cfg = cfg.merged(omega_min=lo, omega_max=hi, steps=n)
    omegas = np.linspace(lo, hi, n).tolist()
    if cfg.workers > 1 and measure:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            rows = list(pool.map(_sweep_point, [cfg] * n, omegas, [measure] * n))
    else:
        rows = [_sweep_point(cfg, om, measure) for om in omegas]
    cols = list(zip(*rows))
    write_csv(_path(cfg, "sweep.csv"),
              ["omega_cap", "case", "discriminant", "predicted_rate", "measured_rate", "flag"],
              cols)
    return rows


# figure presets: (cap_omega key, t_end, kind)
FIGURES = {
    "fig1": ("principal1", 40.0, "response"),
    "fig2": ("principal1", 40.0, "damping"),
    "fig3": ("principal1", 40.0, "overlay"),
    "fig4": ("principal2", 60.0, "overlay"),
    "fig5": ("principal3", 30.0, "overlay"),
    "fig6": ("zeroth", 60.0, "response"),
    "fig7": ("zeroth", 60.0, "damping"),
    "fig8": ("zeroth", 60.0, "overlay"),
}

_TITLES = {
    "fig1": "Principal parametric resonance: response",
    "fig2": "Principal parametric resonance: measured damping ratio",
    "fig3": "True vs approximate response, positive discriminant",
    "fig4": "True vs approximate response, negative discriminant",
    "fig5": "True vs approximate response, zero discriminant",
    "fig6": "Zero-th order parametric resonance: response",
    "fig7": "Zero-th order parametric resonance: measured damping ratio",
    "fig8": "True vs approximate response, zero-th order",
}


def run_figures(cfg: ExperimentConfig, preset: str) -> dict:
    """Reproduce one figure (or ``"all"``) as CSV plus SVG; returns written paths."""
    if preset == "all":
        out = {}
        for name in FIGURES:
            out.update(run_figures(cfg, name))
        return out
    if preset not in FIGURES:
        raise ValidationError(f"unknown preset {preset!r}; choose from {', '.join(FIGURES)} or all")
    key, t_end, kind = FIGURES[preset]
    fcfg = replace(cfg, cap_omega=core.REF_CAP_OMEGA[key], t_end=t_end).validated()
    params = fcfg.params()
    ic = fcfg.initial_state(params)
    grid = fcfg.grid()
    x = integrate(params, ic, grid)
    csv_path = _path(fcfg, f"{preset}.csv")
    svg_path = _path(fcfg, f"{preset}.svg")
    title = _TITLES[preset]
    if kind == "response":
        env = modal.envelope(x)
        write_csv(csv_path, ["t", "x", "envelope"], [x.t, x.values, env.values])
        svg.line_plot(svg_path, [("x(t)", x.t, x.values), ("envelope", env.t, env.values)],
                      title, "t (s)", "x")
    elif kind == "damping":
        trace = modal.sliding_damping(x, fcfg.window, fcfg.stride, fcfg.order)
        write_csv(csv_path, ["t_center", "zeta_hat", "omega_hat"],
                  [trace.t_center, trace.zeta_hat, trace.omega_hat])
        svg.line_plot(svg_path, [("damping ratio", trace.t_center, trace.zeta_hat)],
                      title, "t (s)", "zeta")
    else:
        _, _, xm = mms.evaluate(params, ic, grid)
        write_csv(csv_path, ["t", "x_true", "x_mms", "abs_err"],
                  [x.t, x.values, xm.values, np.abs(xm.values - x.values)])
        svg.line_plot(svg_path, [("true", x.t, x.values), ("approximation", xm.t, xm.values)],
                      title, "t (s)", "x")
    return {f"{preset}.csv": csv_path, f"{preset}.svg": svg_path}
