import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from paramres import core, modal, sim
from paramres.errors import (EnvelopeError, IllConditionedError, UndefinedRatioError,
                             ValidationError)


def damped_sum(poles, amps, phases, dt, duration):
    grid = sim.TimeGrid.span(duration, dt)
    t = grid.times
    x = sum(a * np.exp(p.real * t) * np.cos(p.imag * t + ph)
            for p, a, ph in zip(poles, amps, phases))
    return sim.TimeSeries(grid, x)


def test_single_mode_recovery():
    ts = damped_sum([complex(-0.0373, 3.8070)], [1.0], [0.0], 0.01, 6.0)
    (mode,) = modal.prony_fit(ts, 2)
    assert mode.lambda_re == pytest.approx(-0.0373, abs=1e-4)
    assert mode.lambda_im == pytest.approx(3.8070, abs=1e-4)
    assert mode.amplitude == pytest.approx(1.0, rel=1e-8)
    assert mode.energy == pytest.approx(1.0)


def test_two_mode_recovery():
    poles = [complex(-0.05, 3.8), complex(-0.2, 7.6)]
    ts = damped_sum(poles, [1.0, 0.4], [0.3, -1.0], 0.02, 10.0)
    modes = modal.prony_fit(ts, 4)
    got = sorted((m.pole for m in modes), key=lambda z: z.imag)
    for g, p in zip(got, poles):
        assert abs(g - p) / abs(p) <= 1e-3
    assert modes[0].lambda_im == pytest.approx(3.8, rel=1e-6)  # larger energy first
    assert sum(m.energy for m in modes) == pytest.approx(1.0)


def test_zero_signal_is_ill_conditioned():
    ts = sim.TimeSeries(sim.TimeGrid.span(1.0, 0.01), np.zeros(101))
    with pytest.raises(IllConditionedError):
        modal.prony_fit(ts, 2)


def test_window_too_short():
    ts = damped_sum([complex(-0.1, 2.0)], [1.0], [0.0], 0.1, 0.3)
    with pytest.raises(ValidationError):
        modal.prony_fit(ts, 2)


def test_order_limits():
    ts = damped_sum([complex(-0.1, 2.0)], [1.0], [0.0], 0.1, 10.0)
    with pytest.raises(ValidationError):
        modal.prony_fit(ts, 13)


def test_real_pole():
    ts = damped_sum([complex(-0.5, 0.0)], [2.0], [0.0], 0.05, 5.0)
    (mode,) = modal.prony_fit(ts, 1)
    assert mode.lambda_im == 0.0
    assert mode.lambda_re == pytest.approx(-0.5, rel=1e-9)
    assert mode.amplitude == pytest.approx(2.0, rel=1e-9)


@pytest.mark.parametrize("pole,zeta", [(complex(-0.0373, 3.8070), 0.0098),
                                       (complex(-1.0, 0.0), 1.0),
                                       (complex(0.0, 5.0), 0.0)])
def test_damping_ratio_of(pole, zeta):
    mode = modal.ModeEstimate(pole.real, pole.imag, 1.0, 0.0, 1.0)
    assert modal.damping_ratio_of(mode) == pytest.approx(zeta, abs=5e-5)


def test_damping_ratio_of_origin():
    with pytest.raises(UndefinedRatioError):
        modal.damping_ratio_of(modal.ModeEstimate(0.0, 0.0, 1.0, 0.0, 1.0))


@given(st.floats(0.0, 0.95), st.floats(0.1, 50.0))
def test_damping_ratio_inverts_params(zeta, omega_n):
    p = core.params_from_modal(zeta, omega_n)
    mode = modal.ModeEstimate(p.sigma, p.omega, 1.0, 0.0, 1.0)
    assert modal.damping_ratio_of(mode) == pytest.approx(zeta, rel=1e-12, abs=1e-15)


pole_re = st.floats(-0.5, 0.5)
pole_im = st.floats(1.0, 10.0)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(pole_re, pole_im, st.floats(0.3, 2.0), st.floats(-3, 3)),
                min_size=1, max_size=2))
def test_prony_exact_on_noiseless_sums(spec):
    if len(spec) == 2:
        assume(abs(spec[0][1] - spec[1][1]) > 0.5)
    poles = [complex(a, b) for a, b, _, _ in spec]
    ts = damped_sum(poles, [s[2] for s in spec], [s[3] for s in spec], 0.05, 10.0)
    modes = modal.prony_fit(ts, 2 * len(spec))
    got = sorted((m.pole for m in modes), key=lambda z: z.imag)
    for g, p in zip(got, sorted(poles, key=lambda z: z.imag)):
        assert abs(g - p) / abs(p) <= 1e-6


@settings(max_examples=25, deadline=None)
@given(st.floats(-1e3, 1e3).filter(lambda c: abs(c) > 1e-3))
def test_scaling_invariance(c):
    base = damped_sum([complex(-0.05, 3.8), complex(-0.2, 7.6)], [1.0, 0.4], [0.3, -1.0],
                      0.02, 10.0)
    scaled = sim.TimeSeries(base.grid, c * base.values)
    for m0, m1 in zip(modal.prony_fit(base, 4), modal.prony_fit(scaled, 4)):
        assert abs(m1.pole - m0.pole) <= 1e-10 * abs(m0.pole)
        assert m1.amplitude == pytest.approx(abs(c) * m0.amplitude, rel=1e-9)


@pytest.mark.parametrize("shift", [1, 7, 33])
def test_time_shift_consistency(shift):
    ts = damped_sum([complex(-0.05, 3.8), complex(-0.2, 7.6)], [1.0, 0.4], [0.3, -1.0],
                    0.02, 12.0)
    a = ts.slice(0.0, 10.0)
    b = ts.slice(shift * ts.dt, shift * ts.dt + 10.0)
    for m0, m1 in zip(modal.prony_fit(a, 4), modal.prony_fit(b, 4)):
        assert abs(m1.pole - m0.pole) <= 1e-8


def test_envelope_of_known_decay():
    ts = damped_sum([complex(-0.1, 10.0)], [1.0], [0.0], 1e-3, 20.0)
    env = modal.envelope(ts)
    t = ts.t
    mask = t >= math.pi / 10
    assert np.max(np.abs(env.values[mask] / np.exp(-0.1 * t[mask]) - 1.0)) <= 0.01


def test_envelope_needs_oscillation():
    ts = sim.TimeSeries(sim.TimeGrid.span(1.0, 0.01), np.zeros(101))
    with pytest.raises(EnvelopeError):
        modal.envelope(ts)
    ts = sim.TimeSeries(sim.TimeGrid.span(1.0, 0.01), np.linspace(1, 2, 101))
    with pytest.raises(EnvelopeError):
        modal.envelope(ts)


def test_dominant_period_with_gaps():
    t = np.linspace(0, 60, 600)
    keep = (t < 20) | (t > 25)
    y = 0.01 + 0.003 * np.sin(2 * math.pi * t / 9.57 + 0.4)
    assert modal.dominant_period(t[keep], y[keep]) == pytest.approx(9.57, rel=1e-3)


def test_growth_fit():
    ts = damped_sum([complex(0.08, 3.8)], [1.0], [0.0], 1e-2, 60.0)
    assert modal.fit_growth_rate(ts, 10.0, 60.0) == pytest.approx(0.08, rel=1e-3)


def test_flat_trace_for_constant_damping(ref, unit_ic):
    p = ref(1.0, k_amp=0.0)
    ts = sim.integrate(p, unit_ic(p), sim.TimeGrid.span(40.0, 1e-3))
    trace = modal.sliding_damping(ts)
    assert len(trace) > 100
    assert np.all(np.diff(trace.t_center) > 0)
    assert np.all(trace.omega_hat > 0)
    assert np.max(np.abs(trace.zeta_hat - 0.0098)) <= 2e-4


@pytest.mark.parametrize("key,period", [("principal1", 2 * math.pi / 0.6566),
                                        ("zeroth", 10.0)])
def test_trace_oscillation_period(ref, unit_ic, key, period):
    p = ref(key)
    ts = sim.integrate(p, unit_ic(p), sim.TimeGrid.span(100.0, 1e-3))
    trace = modal.sliding_damping(ts)
    got = modal.dominant_period(trace.t_center, trace.zeta_hat)
    assert got == pytest.approx(period, rel=0.05)


def test_case1_envelope_modulation(ref, unit_ic):
    p = ref("principal1")
    ts = sim.integrate(p, unit_ic(p), sim.TimeGrid.span(40.0, 1e-3))
    assert 2 * math.pi / modal.modulation_frequency(ts) == pytest.approx(9.57, rel=0.05)


def test_sliding_damping_validation(ref, unit_ic):
    p = ref("principal1")
    ts = sim.integrate(p, unit_ic(p), sim.TimeGrid.span(10.0, 1e-2))
    with pytest.raises(ValidationError):
        modal.sliding_damping(ts, stride=0.0)
    with pytest.raises(ValidationError):
        modal.sliding_damping(ts, window_len=20.0)


def test_trace_rows_iterate():
    trace = modal.DampingTrace(np.array([1.0, 2.0]), np.array([0.1, 0.2]), np.array([3.0, 3.1]))
    assert list(trace) == [(1.0, 0.1, 3.0), (2.0, 0.2, 3.1)]
