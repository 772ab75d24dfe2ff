"""Multiple-scales approximations of the modulated-damping oscillator.

Near ``Omega = 2*omega`` the sign of ``(Omega - 2*omega)**2 - K**2/4``
picks one of three closed forms (beating, exponential splitting, secular
growth). Near ``Omega = 0`` a single form with a periodically varying
exponent applies. All public functions work in physical units, i.e. with the
bookkeeping parameter fixed to one unless an explicit :class:`MmsScaling` is
passed.

The initial condition is always taken at ``t = 0``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .core import InitialState, MmsScaling, OscillatorParams
from .errors import CoefficientDomainError, SingularityError, ValidationError
from .sim import TimeGrid, TimeSeries, unforced_exact

# half-width of the principal window, in units of K
PRINCIPAL_WINDOW_K = 2.0
# upper bound of the zero-th order window, in units of omega
ZEROTH_WINDOW_OMEGA = 0.5
# |discriminant| below this fraction of (2*omega)**2 counts as zero
DISCRIMINANT_RTOL = 1e-5


class CaseTag(str, enum.Enum):
    PRINCIPAL1 = "Principal1"
    PRINCIPAL2 = "Principal2"
    PRINCIPAL3 = "Principal3"
    ZEROTH = "ZerothOrder"
    NONRESONANT = "NonResonant"


@dataclass(frozen=True)
class ResonanceCase:
    tag: CaseTag
    discriminant: float


@dataclass(frozen=True)
class MmsSolution:
    """Closed-form coefficients of one regime.

    Only the coefficients of the active case are set; the rest stay ``None``.
    ``omega_k`` and ``omega_c`` are physical (bookkeeping parameter removed).
    For Case 2, ``omega_c`` is the common carrier frequency of both
    components.
    """

    case: ResonanceCase
    omega_k: float
    omega_c: float
    c1: Optional[float] = None
    c2: Optional[float] = None
    c3: Optional[float] = None
    c4: Optional[float] = None
    r1: Optional[float] = None
    r2: Optional[float] = None
    r3: Optional[float] = None
    r4: Optional[float] = None
    theta: Optional[float] = None
    scaling: Optional[MmsScaling] = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["case"] = {"tag": self.case.tag.value, "discriminant": self.case.discriminant}
        return d


def discriminant_tolerance(params: OscillatorParams) -> float:
    return DISCRIMINANT_RTOL * (2.0 * params.omega) ** 2


def classify(params: OscillatorParams) -> ResonanceCase:
    """Assign the resonance regime of ``params``.

    The zero-th order window is ``0 < Omega <= omega/2``; the principal
    window is ``|Omega - 2*omega| <= 2*K``. Within the principal window the
    discriminant is compared with :func:`discriminant_tolerance`.
    """
    disc = params.discriminant
    if 0.0 < params.cap_omega <= ZEROTH_WINDOW_OMEGA * params.omega:
        return ResonanceCase(CaseTag.ZEROTH, disc)
    if abs(params.detuning) <= PRINCIPAL_WINDOW_K * params.k_amp:
        tol = discriminant_tolerance(params)
        if disc > tol:
            tag = CaseTag.PRINCIPAL1
        elif disc < -tol:
            tag = CaseTag.PRINCIPAL2
        else:
            tag = CaseTag.PRINCIPAL3
        return ResonanceCase(tag, disc)
    return ResonanceCase(CaseTag.NONRESONANT, disc)


def _phase(num, den):
    # atan2 of signed zeros yields +/-pi; a 0/0 pair means "no phase"
    if num == 0.0 and den == 0.0:
        return 0.0
    return math.atan2(num, den)


def _nonneg_sqrt(value, scale, what):
    if value < 0.0:
        if value < -1e-13 * max(scale, 1e-300):
            raise CoefficientDomainError(f"{what}: negative radicand {value:.6g}")
        return 0.0
    return math.sqrt(value)


def _check_scaling(sc: MmsScaling, params: OscillatorParams, detuning: float):
    tol = 1e-12
    if (abs(sc.k_eps * sc.epsilon - params.k_amp) > tol * max(1.0, params.k_amp)
            or abs(sc.xi * sc.epsilon - detuning) > tol * max(1.0, abs(detuning))):
        raise ValidationError("scaling does not reproduce K and the detuning")


def case1_solution(params: OscillatorParams, ic: InitialState,
                   scaling: Optional[MmsScaling] = None) -> MmsSolution:
    """Coefficients of the beating solution (positive discriminant).

    The two components have magnitudes ``c1``/``c2`` and frequencies
    ``omega_c - omega_k`` / ``omega_c``; the beat frequency is ``omega_k``.

    Raises
    ------
    ValidationError
        If the discriminant is not positive.
    SingularityError
        If ``omega_k`` vanishes (boundary case, use :func:`case3_eval`).
    CoefficientDomainError
        If a magnitude radicand is negative beyond round-off.
    """
    sc = scaling or MmsScaling.principal(params)
    _check_scaling(sc, params, params.detuning)
    xi, ke = sc.xi, sc.k_eps
    d = xi * xi - ke * ke / 4.0
    if d < 0.0:
        raise ValidationError("case 1 needs a positive discriminant")
    wk = math.sqrt(d)
    if wk == 0.0:
        raise SingularityError("omega_k = 0: discriminant vanishes, use case 3")
    are, aim = ic.a_re0, ic.a_im0

    # (xi +/- wk) and the quadratic form share the sign of xi, so the
    # product under one root is nonnegative even when each factor is not
    quad = xi * (are * are + aim * aim) + ke * are * aim
    scale = abs(xi) * (are * are + aim * aim) / wk ** 2 * (abs(xi) + wk)
    c1 = _nonneg_sqrt((xi + wk) * quad / (2.0 * wk * wk), scale, "c1")
    c2 = _nonneg_sqrt((xi - wk) * quad / (2.0 * wk * wk), scale, "c2")

    r1 = _phase(2.0 * aim * (xi + wk) + ke * are, 2.0 * are * (xi + wk) + ke * aim)
    # the second ratio is the tangent of the phase plus pi
    r2 = _phase(-(2.0 * aim * (xi - wk) + ke * are), -(2.0 * are * (xi - wk) + ke * aim))

    eps = sc.epsilon
    return MmsSolution(
        case=ResonanceCase(CaseTag.PRINCIPAL1, params.discriminant),
        omega_k=eps * wk,
        omega_c=params.omega + eps * (xi + wk) / 2.0,
        c1=c1, c2=c2, r1=r1, r2=r2, scaling=sc,
    )


def case1_eval(sol: MmsSolution, params: OscillatorParams, grid: TimeGrid) -> TimeSeries:
    if sol.case.tag is not CaseTag.PRINCIPAL1:
        raise ValidationError("not a case 1 solution")
    t = grid.times
    env = 2.0 * np.exp(params.sigma * t)
    x = env * (sol.c1 * np.cos((sol.omega_c - sol.omega_k) * t + sol.r1)
               + sol.c2 * np.cos(sol.omega_c * t + sol.r2))
    return TimeSeries(grid, x)


def case2_solution(params: OscillatorParams, ic: InitialState,
                   scaling: Optional[MmsScaling] = None) -> MmsSolution:
    """Coefficients of the split-exponent solution (negative discriminant).

    Component 3 grows at ``sigma + omega_k/2`` and component 4 decays at
    ``sigma - omega_k/2``, both on the carrier ``omega + detuning/2``
    (which equals ``Omega/2``).
    """
    sc = scaling or MmsScaling.principal(params)
    _check_scaling(sc, params, params.detuning)
    xi, ke = sc.xi, sc.k_eps
    d = ke * ke / 4.0 - xi * xi
    if d < 0.0:
        raise ValidationError("case 2 needs a negative discriminant")
    wk = math.sqrt(d)
    if wk == 0.0:
        raise SingularityError("omega_k = 0: discriminant vanishes, use case 3")
    are, aim = ic.a_re0, ic.a_im0

    lo = ke - 2.0 * wk
    hi = ke + 2.0 * wk
    scale = ke * hi / (8.0 * wk * wk)
    c3 = _nonneg_sqrt(ke * hi / (8.0 * wk * wk), scale, "c3") * abs(are + aim * 2.0 * xi / hi)
    # 2*xi/sqrt(lo) = sign(xi)*sqrt(hi), which stays finite as xi -> 0
    root_lo = _nonneg_sqrt(lo, ke, "c4")
    c4 = math.sqrt(ke / (8.0 * wk * wk)) * abs(
        are * root_lo + math.copysign(1.0, xi) * aim * math.sqrt(hi))

    r3 = _phase(-aim * lo - 2.0 * xi * are, are * hi + 2.0 * xi * aim)
    r4 = _phase(aim * hi + 2.0 * xi * are, -are * lo - 2.0 * xi * aim)

    eps = sc.epsilon
    return MmsSolution(
        case=ResonanceCase(CaseTag.PRINCIPAL2, params.discriminant),
        omega_k=eps * wk,
        omega_c=params.omega + eps * xi / 2.0,
        c3=c3, c4=c4, r3=r3, r4=r4, scaling=sc,
    )


def case2_eval(sol: MmsSolution, params: OscillatorParams, grid: TimeGrid) -> TimeSeries:
    if sol.case.tag is not CaseTag.PRINCIPAL2:
        raise ValidationError("not a case 2 solution")
    t = grid.times
    s, half = params.sigma, sol.omega_k / 2.0
    phase = sol.omega_c * t
    x = (2.0 * sol.c3 * np.exp((s + half) * t) * np.cos(phase + sol.r3)
         + 2.0 * sol.c4 * np.exp((s - half) * t) * np.cos(phase + sol.r4))
    return TimeSeries(grid, x)


def case2_growth_rate(params: OscillatorParams) -> float:
    """Exponent of the growing component, ``sigma + omega_k/2``."""
    d = -params.discriminant
    if d < 0.0:
        raise ValidationError("case 2 needs a negative discriminant")
    return params.sigma + math.sqrt(d) / 2.0


def case3_eval(params: OscillatorParams, ic: InitialState, grid: TimeGrid,
               sign: Optional[int] = None) -> TimeSeries:
    """Secular solution on a tongue boundary, ``Omega - 2*omega = sign*K/2``.

    ``sign`` defaults to the sign of ``Omega - 2*omega``.
    """
    if sign is None:
        sign = 1 if params.detuning >= 0.0 else -1
    if sign not in (1, -1):
        raise ValidationError(f"sign must be +1 or -1, got {sign}")
    t = grid.times
    are, aim = ic.a_re0, ic.a_im0
    q = params.k_amp / 4.0
    if sign > 0:
        slope = q * (are + aim)
        u = are + slope * t
        v = aim - slope * t
    else:
        slope = q * (are - aim)
        u = are + slope * t
        v = aim + slope * t
    half = params.cap_omega / 2.0 * t
    x = 2.0 * np.exp(params.sigma * t) * (u * np.cos(half) - v * np.sin(half))
    return TimeSeries(grid, x)


def zeroth_exponent_amplitude(params: OscillatorParams) -> float:
    """``K*sqrt(sigma**2 + omega**2) / (4*Omega*omega)``."""
    if params.cap_omega == 0.0:
        raise SingularityError("Omega = 0")
    return params.k_amp * math.sqrt(params.stiffness) / (4.0 * params.cap_omega * params.omega)


def zeroth_solution(params: OscillatorParams) -> MmsSolution:
    if params.cap_omega == 0.0:
        raise SingularityError("Omega = 0")
    return MmsSolution(
        case=ResonanceCase(CaseTag.ZEROTH, params.discriminant),
        omega_k=0.0,
        omega_c=params.omega,
        theta=math.atan2(params.omega, params.sigma),
    )


def zeroth_eval(params: OscillatorParams, ic: InitialState, grid: TimeGrid) -> TimeSeries:
    """Zero-th order approximation with a periodically varying exponent.

    ``theta`` is the polar angle of ``(sigma, omega)``; the quadrant matters
    because ``sigma < 0``.
    """
    if params.cap_omega == 0.0:
        raise SingularityError("Omega = 0: zero-th order form has 1/Omega terms")
    t = grid.times
    s, w, om, k = params.sigma, params.omega, params.cap_omega, params.k_amp
    m = zeroth_exponent_amplitude(params)
    theta = math.atan2(w, s)
    arg = om * t + theta
    first = 2.0 * np.exp(m * np.cos(arg) + s * t) * np.cos(m * np.sin(arg) + w * t)
    const = math.exp(k * s / (4.0 * w * om))
    second = 2.0 * np.exp(s * t) * (ic.a_re0 * np.cos(w * t) - ic.a_im0 * np.sin(w * t)
                                    - const * np.cos(w * t + k / (4.0 * om)))
    return TimeSeries(grid, first + second)


def _zeroth_coefficient(params, scaling):
    sc = scaling or MmsScaling.zeroth(params)
    _check_scaling(sc, params, params.cap_omega)
    if sc.xi == 0.0:
        raise SingularityError("xi = 0: slow amplitude solution is singular")
    c = sc.k_eps * complex(params.sigma, params.omega) / (4.0 * sc.xi * params.omega)
    return sc, c


def zeroth_amplitude_rate(params: OscillatorParams, scaling: Optional[MmsScaling] = None):
    """Return ``f(t1, a)``, the right-hand side of the slow amplitude equation."""
    sc = scaling or MmsScaling.zeroth(params)
    _check_scaling(sc, params, params.cap_omega)
    gain = sc.k_eps * complex(-params.omega, params.sigma) / (4.0 * params.omega)
    xi = sc.xi

    def rate(t1, a):
        return gain * np.exp(1j * xi * t1) * a

    return rate


def zeroth_amplitude_exact(params: OscillatorParams, ic: InitialState, t1,
                           scaling: Optional[MmsScaling] = None):
    """Exact solution of the slow amplitude equation at slow time ``t1``.

    ``A(t1) = A0 * exp(c*(exp(j*xi*t1) - 1))`` with
    ``c = k_eps*(sigma + j*omega)/(4*xi*omega)``.
    """
    sc, c = _zeroth_coefficient(params, scaling)
    return ic.a0 * np.exp(c * (np.exp(1j * sc.xi * np.asarray(t1)) - 1.0))


def zeroth_amplitude_printed(params: OscillatorParams, ic: InitialState, t1,
                             scaling: Optional[MmsScaling] = None):
    """Additive amplitude form behind :func:`zeroth_eval`.

    ``A(t1) = exp(c*exp(j*xi*t1)) + A0 - exp(c)``; agrees with
    :func:`zeroth_amplitude_exact` only to first order in ``c``.
    """
    sc, c = _zeroth_coefficient(params, scaling)
    return np.exp(c * np.exp(1j * sc.xi * np.asarray(t1))) + ic.a0 - np.exp(c)


def zeroth_eval_exact(params: OscillatorParams, ic: InitialState, grid: TimeGrid) -> TimeSeries:
    """``x0`` rebuilt from :func:`zeroth_amplitude_exact` (diagnostic)."""
    t = grid.times
    a = zeroth_amplitude_exact(params, ic, t)
    x = 2.0 * np.real(a * np.exp(complex(params.sigma, params.omega) * t))
    return TimeSeries(grid, x)


def x1_correction_principal(params: OscillatorParams, ic: InitialState,
                            grid: TimeGrid) -> TimeSeries:
    """First-order correction near principal resonance, amplitude frozen at ``A0``."""
    s, w, om, k = params.sigma, params.omega, params.cap_omega, params.k_amp
    if om == 0.0 or om + 2.0 * w == 0.0:
        raise SingularityError("vanishing denominator Omega*(Omega + 2*omega)")
    t = grid.times
    lam = complex(s, w)
    pref = k * lam * ic.a0 / 2.0
    inner = (np.exp(complex(s, om + w) * t) / (om * (om + 2.0 * w))
             + np.exp(complex(s, -w) * t) / (2.0 * w * (om + 2.0 * w))
             - np.exp(lam * t) / (2.0 * w * om))
    return TimeSeries(grid, 2.0 * np.real(pref * inner))


def x1_correction_zeroth(params: OscillatorParams, ic: InitialState,
                         grid: TimeGrid) -> TimeSeries:
    """First-order correction near ``Omega = 0``, amplitude frozen at ``A0``."""
    s, w, om, k = params.sigma, params.omega, params.cap_omega, params.k_amp
    if om == 0.0 or om - 2.0 * w == 0.0:
        raise SingularityError("vanishing denominator Omega*(Omega - 2*omega)")
    t = grid.times
    pref = k * complex(s, -w) * ic.a0.conjugate() / 2.0
    inner = (np.exp(complex(s, om - w) * t) / (om * (om - 2.0 * w))
             + np.exp(complex(s, -w) * t) / (2.0 * w * om)
             - np.exp(complex(s, w) * t) / (2.0 * w * (2.0 * w - om)))
    return TimeSeries(grid, 2.0 * np.real(pref * inner))


def solve(params: OscillatorParams, ic: InitialState) -> tuple[ResonanceCase, Optional[MmsSolution]]:
    """Classify and compute the coefficient set of the active regime.

    Case 3 and non-resonant points have no coefficient set; the second item
    is then ``None``.
    """
    case = classify(params)
    if case.tag is CaseTag.PRINCIPAL1:
        return case, case1_solution(params, ic)
    if case.tag is CaseTag.PRINCIPAL2:
        return case, case2_solution(params, ic)
    if case.tag is CaseTag.ZEROTH:
        return case, zeroth_solution(params)
    return case, None


def evaluate(params: OscillatorParams, ic: InitialState,
             grid: TimeGrid) -> tuple[ResonanceCase, Optional[MmsSolution], TimeSeries]:
    """Evaluate the approximation that matches the regime of ``params``.

    Non-resonant points fall back to the unforced response, which is the
    zero-modulation limit of every form.
    """
    case, sol = solve(params, ic)
    tag = case.tag
    if tag is CaseTag.PRINCIPAL1:
        ts = case1_eval(sol, params, grid)
    elif tag is CaseTag.PRINCIPAL2:
        ts = case2_eval(sol, params, grid)
    elif tag is CaseTag.PRINCIPAL3:
        ts = case3_eval(params, ic, grid)
    elif tag is CaseTag.ZEROTH:
        ts = zeroth_eval(params, ic, grid)
    else:
        ts = unforced_exact(params, ic, grid)
    return case, sol, ts
