"""Simulation and analysis of an oscillator with periodically modulated damping."""

from .core import (InitialState, MmsScaling, OscillatorParams, a0_from_initial,
                   params_from_eigen, params_from_modal)
from .errors import (CoefficientDomainError, DivergenceError, EnvelopeError,
                     IllConditionedError, NumericalError, ParamresError, SingularityError,
                     UndefinedRatioError, ValidationError)
from .sim import TimeGrid, TimeSeries, integrate, unforced_exact

__version__ = "0.1.0"
