import math

import pytest
from hypothesis import given, strategies as st

from paramres import core
from paramres.errors import SingularityError, ValidationError


def test_reference_parameter_set():
    p = core.params_from_modal(0.0098, 3.8072, 0.5, 6.9115)
    assert p.sigma == pytest.approx(-0.0373, abs=5e-5)
    assert p.omega == pytest.approx(3.8070, abs=5e-5)
    assert p.sigma < 0


def test_undamped_and_derived_examples():
    p = core.params_from_modal(0.0, 1.0, 0.0, 0.0)
    assert p.sigma == 0.0 and p.omega == 1.0
    p = core.params_from_modal(0.5, 2.0, 0.1, 1.0)
    assert p.sigma == pytest.approx(-1.0, rel=1e-15)
    assert p.omega == pytest.approx(2.0 * math.sqrt(0.75), rel=1e-15)


@pytest.mark.parametrize("zeta,omega_n", [(-0.1, 1.0), (1.0, 1.0), (1.5, 1.0),
                                          (0.1, 0.0), (0.1, -2.0), (float("nan"), 1.0)])
def test_params_reject_out_of_range(zeta, omega_n):
    with pytest.raises(ValidationError):
        core.params_from_modal(zeta, omega_n)


def test_negative_modulation_rejected():
    with pytest.raises(ValidationError):
        core.params_from_modal(0.1, 1.0, k_amp=-0.1)
    with pytest.raises(ValidationError):
        core.params_from_modal(0.1, 1.0, cap_omega=-1.0)


def test_inconsistent_direct_construction_rejected():
    with pytest.raises(ValidationError):
        core.OscillatorParams(0.1, 1.0, -0.2, 0.99, 0.0, 0.0)


def test_a0_reference_initial_state():
    p = core.reference_params(6.9115)
    ic = core.a0_from_initial(1.0, 0.0, p)
    assert ic.a_re0 == 0.5
    assert ic.a_im0 == pytest.approx(-0.004900, abs=5e-7)


def test_a0_trivial_cases():
    p = core.params_from_modal(0.3, 2.0)
    ic = core.a0_from_initial(0.0, 0.0, p)
    assert (ic.a_re0, ic.a_im0) == (0.0, 0.0)
    ic = core.a0_from_initial(2.0, 2.0 * p.sigma, p)
    assert ic.a_re0 == 1.0
    assert ic.a_im0 == pytest.approx(0.0, abs=1e-15)


def test_a0_singular_omega():
    fake = core.OscillatorParams.__new__(core.OscillatorParams)
    object.__setattr__(fake, "sigma", 0.0)
    object.__setattr__(fake, "omega", 0.0)
    with pytest.raises(SingularityError):
        core.a0_from_initial(1.0, 0.0, fake)


def test_scaling_invariants(ref):
    p = ref("principal1")
    sc = core.MmsScaling.principal(p, 0.1)
    assert sc.k_eps * sc.epsilon == pytest.approx(p.k_amp)
    assert sc.xi * sc.epsilon == pytest.approx(p.detuning)
    sc = core.MmsScaling.zeroth(p, 0.5)
    assert sc.xi * sc.epsilon == pytest.approx(p.cap_omega)
    with pytest.raises(ValidationError):
        core.MmsScaling.principal(p, 0.0)


zetas = st.floats(0.0, 0.95)
omegas = st.floats(0.05, 50.0)


@given(zetas, omegas, st.floats(-10, 10), st.floats(-10, 10))
def test_initial_state_round_trip(zeta, omega_n, x0, v0):
    p = core.params_from_modal(zeta, omega_n)
    ic = core.a0_from_initial(x0, v0, p)
    x0_back, v0_back = core.state_from_a0(ic.a0, p)
    scale = max(abs(x0), abs(v0), 1e-300)
    assert abs(x0_back - x0) <= 1e-12 * scale
    assert abs(v0_back - v0) <= 1e-12 * max(scale, abs(x0) * omega_n)


@given(zetas, omegas)
def test_modal_eigen_round_trip(zeta, omega_n):
    p = core.params_from_modal(zeta, omega_n)
    z, wn = core.modal_from_eigen(p.sigma, p.omega)
    assert z == pytest.approx(zeta, rel=1e-12, abs=1e-15)
    assert wn == pytest.approx(omega_n, rel=1e-12)
