"""Experiment configuration: a flat JSON document, overridable field by field."""

from __future__ import annotations

import json
import math
import os
from dataclasses import asdict, dataclass, fields, replace
from typing import Optional

from .. import core, modal
from ..core import InitialState, OscillatorParams
from ..errors import ValidationError
from ..sim import DEFAULT_DT, TimeGrid

OUT_ENV = "PARAMRES_OUT"


@dataclass(frozen=True)
class ExperimentConfig:
    zeta: float = core.REF_ZETA
    omega_n: float = core.REF_OMEGA_N
    k: float = core.REF_K
    cap_omega: float = core.REF_CAP_OMEGA["principal1"]
    x0: float = 1.0
    v0: float = 0.0
    t_end: float = 40.0
    dt: float = DEFAULT_DT
    window: Optional[float] = None
    stride: float = modal.DEFAULT_STRIDE
    order: int = modal.DEFAULT_ORDER
    out: Optional[str] = None
    omega_min: float = 6.5
    omega_max: float = 8.5
    steps: int = 201
    workers: int = 1

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValidationError(f"unknown config keys: {', '.join(unknown)}")
        return cls(**data).validated()

    @classmethod
    def from_json(cls, path) -> "ExperimentConfig":
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ValidationError("config file must hold a JSON object")
        return cls.from_dict(data)

    def merged(self, **overrides) -> "ExperimentConfig":
        """Copy with every non-``None`` override applied."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None}).validated()

    def to_dict(self) -> dict:
        return asdict(self)

    def validated(self) -> "ExperimentConfig":
        for name in ("zeta", "omega_n", "k", "cap_omega", "x0", "v0", "t_end", "dt",
                     "stride", "omega_min", "omega_max"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ValidationError(f"{name} must be a finite number")
        self.params()
        self.grid()
        if self.window is not None and not self.window > 0:
            raise ValidationError("window must be positive")
        if not self.stride > 0:
            raise ValidationError("stride must be positive")
        if not 1 <= int(self.order) <= modal.MAX_ORDER:
            raise ValidationError(f"order must be in [1, {modal.MAX_ORDER}]")
        if int(self.steps) < 2:
            raise ValidationError("steps must be >= 2")
        if not self.omega_max > self.omega_min >= 0:
            raise ValidationError("need 0 <= omega_min < omega_max")
        if int(self.workers) < 1:
            raise ValidationError("workers must be >= 1")
        return self

    def params(self, cap_omega: Optional[float] = None) -> OscillatorParams:
        return core.params_from_modal(self.zeta, self.omega_n, self.k,
                                      self.cap_omega if cap_omega is None else cap_omega)

    def initial_state(self, params: Optional[OscillatorParams] = None) -> InitialState:
        return core.a0_from_initial(self.x0, self.v0, params or self.params())

    def grid(self) -> TimeGrid:
        return TimeGrid(0.0, self.t_end, self.dt)

    def out_dir(self) -> str:
        return self.out or os.environ.get(OUT_ENV) or "out"
