import pytest

from paramres import core

ACCEPTANCE_LINES = []


@pytest.fixture
def ref():
    """Factory for the reference parameter set at a given modulation frequency."""
    def make(key_or_omega, k_amp=core.REF_K):
        om = core.REF_CAP_OMEGA.get(key_or_omega, key_or_omega)
        return core.reference_params(om, k_amp)
    return make


@pytest.fixture
def unit_ic():
    def make(params, x0=1.0, v0=0.0):
        return core.a0_from_initial(x0, v0, params)
    return make


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
