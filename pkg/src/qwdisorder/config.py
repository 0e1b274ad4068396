"""Run configuration and its flat ``key = value`` text format."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, fields
from typing import Optional

from .coins import fourier, hadamard
from .core_state import GaussianSpec, PositionInit
from .ensemble import BlochGrid, POLICIES, bloch_grid
from .errors import DomainError
from .schedule import (
    ADO,
    DIRECTIONS,
    SDD2,
    SHAPES,
    CoinSchedule,
    OrderRestart,
    Ordered,
    PeriodicFourier,
    SDDInf,
    WDDConst,
    WDDTransient,
)

SCHEDULES = ("hadamard", "fourier", "sdd2", "sdd_inf", "ado", "restart", "wdd", "transient", "periodic")


class ConfigError(DomainError):
    pass


@dataclass
class RunConfig:
    scenario: str = "custom"
    label: str = "run"
    schedule: str = "hadamard"
    inner: str = "sdd2"
    p: float = 0.5
    dt: int = 100
    switch: int = 500
    transient: str = "linear"
    direction: str = "order_to_disorder"
    horizon: int = 0
    period: int = 33
    steps: int = 1000
    position: str = "local"
    sigma0: float = 10.0
    cutoff: int = 100
    grid_step: float = 0.1
    seed: int = 0
    policy: str = "shared"
    realizations: int = 1
    tref: int = 100
    workers: int = 1
    method: str = "auto"
    sequence: str = ""
    out: str = "results"

    def replace(self, **changes) -> "RunConfig":
        return dataclasses.replace(self, **changes)

    def build_schedule(self) -> CoinSchedule:
        s = self.schedule
        if s == "hadamard":
            return Ordered(hadamard())
        if s == "fourier":
            return Ordered(fourier())
        if s in ("sdd2", "sdd_inf"):
            return SDD2() if s == "sdd2" else SDDInf()
        if s in ("ado", "restart"):
            if self.inner not in ("sdd2", "sdd_inf"):
                raise ConfigError(f"inner must be sdd2 or sdd_inf, got {self.inner!r}")
            inner = SDD2() if self.inner == "sdd2" else SDDInf()
            if s == "ado":
                return ADO(inner, self.dt)
            return OrderRestart(inner, self.switch)
        if s == "wdd":
            return WDDConst(self.p)
        if s == "transient":
            return WDDTransient(self.transient, self.direction, self.horizon or self.steps)
        if s == "periodic":
            return PeriodicFourier(self.period)
        raise ConfigError(f"unknown schedule {s!r}; choose from {', '.join(SCHEDULES)}")

    def position_init(self) -> PositionInit:
        if self.position == "local":
            return "local"
        if self.position == "gaussian":
            return GaussianSpec(self.sigma0, self.cutoff)
        raise ConfigError(f"position must be 'local' or 'gaussian', got {self.position!r}")

    def grid(self) -> BlochGrid:
        return bloch_grid(self.grid_step, self.grid_step)

    def validate(self) -> None:
        """Raise :class:`DomainError` on any inconsistent setting."""
        if self.steps < 0:
            raise ConfigError("steps must be >= 0")
        if self.policy not in POLICIES:
            raise ConfigError(f"policy must be one of {POLICIES}")
        if self.realizations < 1:
            raise ConfigError("realizations must be >= 1")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.transient not in SHAPES or self.direction not in DIRECTIONS:
            raise ConfigError("bad transient shape or direction")
        if not (math.isfinite(self.grid_step) and self.grid_step > 0):
            raise ConfigError("grid_step must be positive")
        self.position_init()
        if not self.sequence:
            self.build_schedule()

    def to_text(self) -> str:
        return "".join(f"{f.name} = {_dump(getattr(self, f.name))}\n" for f in fields(self))

    @classmethod
    def from_text(cls, text: str, base: Optional["RunConfig"] = None) -> "RunConfig":
        return (base or cls()).replace(**parse_pairs(text))


_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _dump(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def coerce(key: str, raw: str):
    kind = _TYPES.get(key)
    if kind is None:
        raise ConfigError(f"unknown config key {key!r}")
    try:
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
    except ValueError:
        raise ConfigError(f"{key}: cannot parse {raw!r} as {kind}") from None
    return raw


def parse_pairs(text: str) -> dict:
    """Parse ``key = value`` lines, ignoring blanks and ``#`` comments.

    Keys outside :class:`RunConfig` are rejected, except the informational
    ones written into metadata sidecars (``code_version``, ``timestamp``...)
    which start with an underscore.
    """
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key.startswith("_"):
            continue
        out[key] = coerce(key, value)
    return out
