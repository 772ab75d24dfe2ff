"""Domain types and parameter conversions for the modulated-damping oscillator

    x'' + (-2*sigma + K*cos(Omega*t)) * x' + (sigma**2 + omega**2) * x = 0

The unforced eigenvalues are ``sigma +/- j*omega``; a decaying system has
``sigma = -zeta*omega_n < 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import SingularityError, ValidationError

# relative slack when checking that stored (sigma, omega) agree with (zeta, omega_n)
_CONSISTENCY_RTOL = 1e-9


@dataclass(frozen=True)
class OscillatorParams:
    """Physical parameters of the oscillator.

    Build instances with :func:`params_from_modal` or :func:`params_from_eigen`
    rather than calling the constructor directly.
    """

    zeta: float
    omega_n: float
    sigma: float
    omega: float
    k_amp: float
    cap_omega: float

    def __post_init__(self):
        for name in ("zeta", "omega_n", "sigma", "omega", "k_amp", "cap_omega"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"{name} must be finite")
        if not 0.0 <= self.zeta < 1.0:
            raise ValidationError(f"zeta must lie in [0, 1), got {self.zeta}")
        if self.omega_n <= 0.0 or self.omega <= 0.0:
            raise ValidationError("omega_n and omega must be positive")
        if self.k_amp < 0.0:
            raise ValidationError(f"k_amp must be >= 0, got {self.k_amp}")
        if self.cap_omega < 0.0:
            raise ValidationError(f"cap_omega must be >= 0, got {self.cap_omega}")
        scale = self.omega_n
        if (abs(self.sigma + self.zeta * self.omega_n) > _CONSISTENCY_RTOL * scale
                or abs(self.omega - self.omega_n * math.sqrt(1.0 - self.zeta ** 2))
                > _CONSISTENCY_RTOL * scale):
            raise ValidationError("(sigma, omega) inconsistent with (zeta, omega_n)")

    @property
    def stiffness(self) -> float:
        """Coefficient of ``x``: ``sigma**2 + omega**2 = omega_n**2``."""
        return self.sigma ** 2 + self.omega ** 2

    @property
    def detuning(self) -> float:
        """Physical offset from principal resonance, ``Omega - 2*omega``."""
        return self.cap_omega - 2.0 * self.omega

    @property
    def discriminant(self) -> float:
        """``(Omega - 2*omega)**2 - K**2/4``; its sign selects the principal case."""
        return self.detuning ** 2 - self.k_amp ** 2 / 4.0

    def replace(self, **changes) -> "OscillatorParams":
        """Copy with new ``zeta``, ``omega_n``, ``k_amp`` or ``cap_omega``."""
        fields = dict(zeta=self.zeta, omega_n=self.omega_n,
                      k_amp=self.k_amp, cap_omega=self.cap_omega)
        unknown = set(changes) - set(fields)
        if unknown:
            raise ValidationError(f"cannot replace derived fields {sorted(unknown)}")
        fields.update(changes)
        return params_from_modal(**fields)


@dataclass(frozen=True)
class InitialState:
    """Initial displacement/velocity and the matching complex amplitude ``A0``."""

    x0: float
    v0: float
    a_re0: float
    a_im0: float

    @property
    def a0(self) -> complex:
        return complex(self.a_re0, self.a_im0)


@dataclass(frozen=True)
class MmsScaling:
    """Bookkeeping parameter of the perturbation expansion.

    ``k_eps = K/epsilon`` and ``xi`` is the detuning divided by ``epsilon``.
    Physical results never depend on ``epsilon``; it exists so that this can
    be checked.
    """

    epsilon: float
    k_eps: float
    xi: float

    def __post_init__(self):
        if not self.epsilon > 0.0:
            raise ValidationError(f"epsilon must be positive, got {self.epsilon}")

    @classmethod
    def principal(cls, params: OscillatorParams, epsilon: float = 1.0) -> "MmsScaling":
        _check_epsilon(epsilon)
        return cls(epsilon, params.k_amp / epsilon, params.detuning / epsilon)

    @classmethod
    def zeroth(cls, params: OscillatorParams, epsilon: float = 1.0) -> "MmsScaling":
        _check_epsilon(epsilon)
        return cls(epsilon, params.k_amp / epsilon, params.cap_omega / epsilon)


def _check_epsilon(epsilon):
    if not epsilon > 0.0:
        raise ValidationError(f"epsilon must be positive, got {epsilon}")


def params_from_modal(zeta: float, omega_n: float, k_amp: float = 0.0,
                      cap_omega: float = 0.0) -> OscillatorParams:
    """Build parameters from damping ratio and natural frequency.

    >>> p = params_from_modal(0.5, 2.0)
    >>> round(p.sigma, 12), round(p.omega, 4)
    (-1.0, 1.7321)
    """
    if not (math.isfinite(zeta) and 0.0 <= zeta < 1.0):
        raise ValidationError(f"zeta must lie in [0, 1), got {zeta}")
    if not (math.isfinite(omega_n) and omega_n > 0.0):
        raise ValidationError(f"omega_n must be positive, got {omega_n}")
    sigma = -zeta * omega_n
    omega = omega_n * math.sqrt(1.0 - zeta * zeta)
    return OscillatorParams(zeta, omega_n, sigma, omega, k_amp, cap_omega)


def params_from_eigen(sigma: float, omega: float, k_amp: float = 0.0,
                      cap_omega: float = 0.0) -> OscillatorParams:
    """Build parameters from the eigenvalue ``sigma + j*omega`` (``sigma <= 0``)."""
    zeta, omega_n = modal_from_eigen(sigma, omega)
    return OscillatorParams(zeta, omega_n, sigma, omega, k_amp, cap_omega)


def modal_from_eigen(sigma: float, omega: float) -> tuple[float, float]:
    """Return ``(zeta, omega_n)`` for the eigenvalue ``sigma + j*omega``."""
    omega_n = math.hypot(sigma, omega)
    if omega_n == 0.0:
        raise SingularityError("zero eigenvalue has no damping ratio")
    return -sigma / omega_n, omega_n


def a0_from_initial(x0: float, v0: float, params: OscillatorParams) -> InitialState:
    """Map ``x(0), x'(0)`` onto the amplitude of ``A e^{(sigma+j omega)t} + c.c.``

    At ``t = 0`` that form gives ``x = 2*a_re`` and
    ``x' = 2*sigma*a_re - 2*omega*a_im``.
    """
    if params.omega == 0.0:
        raise SingularityError("omega = 0: amplitude mapping is singular")
    a_re = x0 / 2.0
    a_im = (params.sigma * x0 - v0) / (2.0 * params.omega)
    return InitialState(float(x0), float(v0), a_re, a_im)


def state_from_a0(a0: complex, params: OscillatorParams) -> tuple[float, float]:
    """Inverse of :func:`a0_from_initial`: ``(x0, v0)`` for a given ``A0``."""
    x0 = 2.0 * a0.real
    v0 = 2.0 * params.sigma * a0.real - 2.0 * params.omega * a0.imag
    return x0, v0


# Parameter set for the reference experiments.
REF_ZETA = 0.0098
REF_OMEGA_N = 3.8072
REF_K = 0.5
REF_CAP_OMEGA = {
    "principal1": 6.9115,
    "principal2": 7.5524,
    "principal3": 7.3639,
    "zeroth": 0.6283,
}


def reference_params(cap_omega: float, k_amp: float = REF_K) -> OscillatorParams:
    return params_from_modal(REF_ZETA, REF_OMEGA_N, k_amp, cap_omega)
