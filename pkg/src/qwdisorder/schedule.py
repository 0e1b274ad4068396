"""Coin schedules: which coin is applied at each time step ``t = 1..N``.

Seeding
-------
A sequence is generated from one PCG64 stream built as
``SeedSequence(seed, spawn_key=key)``.  Ensemble code derives independent
streams by extending ``key`` (realization index, then qubit index).  The
stream is consumed in time-step order:

* two-coin families (SDD2, WDD, the disordered blocks of ADO over SDD2)
  consume one uniform per step, Fourier iff ``u < p(t)``;
* the SU(2) family consumes three uniforms per step (q, theta, phi).

ADO and order-restart schedules draw at *every* step and discard the draw
on ordered steps, so their disordered steps see exactly the coins of the
plain SDD run with the same seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .coins import CoinParams, coin_matrices, fourier, hadamard
from .errors import DomainError

TWO_PI = 2.0 * math.pi
HADAMARD = np.array(hadamard().as_tuple())
FOURIER = np.array(fourier().as_tuple())

SHAPES = ("linear", "quadratic", "negative_quadratic")
DIRECTIONS = ("order_to_disorder", "disorder_to_order")


@dataclass(frozen=True)
class Ordered:
    coin: CoinParams = field(default_factory=hadamard)

    def describe(self) -> str:
        c = self.coin
        return f"ordered(q={c.q!r},theta={c.theta!r},phi={c.phi!r})"


@dataclass(frozen=True)
class SDD2:
    def describe(self) -> str:
        return "sdd2"


@dataclass(frozen=True)
class SDDInf:
    def describe(self) -> str:
        return "sdd_inf"


@dataclass(frozen=True)
class ADO:
    """Alternating blocks: ``delta_t`` disordered steps, then ``delta_t``
    steps of ``ordered_coin``, repeating."""

    inner: Union[SDD2, SDDInf] = field(default_factory=SDD2)
    delta_t: int = 100
    ordered_coin: CoinParams = field(default_factory=hadamard)

    def describe(self) -> str:
        return f"ado({self.inner.describe()},dt={self.delta_t})"


@dataclass(frozen=True)
class OrderRestart:
    """Disordered for ``t <= switch_step``, then ``ordered_coin`` forever."""

    inner: Union[SDD2, SDDInf] = field(default_factory=SDD2)
    switch_step: int = 500
    ordered_coin: CoinParams = field(default_factory=hadamard)

    def describe(self) -> str:
        return f"restart({self.inner.describe()},at={self.switch_step})"


@dataclass(frozen=True)
class WDDConst:
    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise DomainError(f"p must lie in [0, 1], got {self.p!r}")

    def describe(self) -> str:
        return f"wdd(p={self.p!r})"


@dataclass(frozen=True)
class WDDTransient:
    shape: str
    direction: str
    horizon: int = 1000

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise DomainError(f"unknown transient shape {self.shape!r}")
        if self.direction not in DIRECTIONS:
            raise DomainError(f"unknown transient direction {self.direction!r}")
        if self.horizon < 1:
            raise DomainError("horizon must be >= 1")

    def describe(self) -> str:
        return f"transient({self.shape},{self.direction},N={self.horizon})"


@dataclass(frozen=True)
class PeriodicFourier:
    """Hadamard walk with a Fourier coin at ``t = period, 2 period, ...``."""

    period: int

    def __post_init__(self):
        if self.period < 1:
            raise DomainError("period must be >= 1")

    def describe(self) -> str:
        return f"periodic_fourier(k={self.period})"


CoinSchedule = Union[Ordered, SDD2, SDDInf, ADO, OrderRestart, WDDConst, WDDTransient, PeriodicFourier]


@dataclass(frozen=True, eq=False)
class CoinSequence:
    """Materialized coins for steps ``t = 1..N``; row ``t-1`` is ``(q, theta, phi)``."""

    params: np.ndarray
    seed: Optional[int] = None
    key: tuple[int, ...] = ()
    descriptor: str = ""

    def __len__(self) -> int:
        return self.params.shape[0]

    @property
    def coins(self) -> list[CoinParams]:
        return [CoinParams(*map(float, row)) for row in self.params]

    def matrices(self) -> np.ndarray:
        return coin_matrices(self.params)

    def __eq__(self, other):
        if not isinstance(other, CoinSequence):
            return NotImplemented
        return np.array_equal(self.params, other.params)


def transient_p(shape: str, direction: str, t: int, N: int) -> float:
    """Fourier probability of a time-dependent weak-disorder schedule."""
    if N < 1:
        raise DomainError("N must be >= 1")
    if not 0 <= t <= N:
        raise DomainError(f"t must lie in [0, {N}], got {t}")
    h2s = direction == "order_to_disorder"
    if direction not in DIRECTIONS:
        raise DomainError(f"unknown transient direction {direction!r}")
    if shape == "linear":
        return t / (2 * N) if h2s else -(t - N) / (2 * N)
    if shape == "quadratic":
        return t * t / (2 * N * N) if h2s else (t - N) ** 2 / (2 * N * N)
    if shape == "negative_quadratic":
        return 0.5 - (t - N) ** 2 / (2 * N * N) if h2s else 0.5 - t * t / (2 * N * N)
    raise DomainError(f"unknown transient shape {shape!r}")


def make_rng(seed: int, key: tuple[int, ...] = ()) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=key)))


def _two_coin(u: np.ndarray, p) -> np.ndarray:
    return np.where((u < p)[:, None], FOURIER, HADAMARD)


def _disordered(inner, rng: np.random.Generator, steps: int) -> np.ndarray:
    if isinstance(inner, SDD2):
        return _two_coin(rng.random(steps), 0.5)
    if isinstance(inner, SDDInf):
        r = rng.random((steps, 3))
        r[:, 1:] *= TWO_PI
        return r
    raise DomainError(f"disordered block must be SDD2 or SDDInf, got {inner!r}")


def generate_sequence(
    schedule: CoinSchedule, steps: int, seed: int = 0, key: tuple[int, ...] = ()
) -> CoinSequence:
    """Draw the coins for ``steps`` steps of ``schedule``.

    Identical ``(schedule, steps, seed, key)`` always give identical sequences.
    """
    if steps < 1:
        raise DomainError(f"steps must be >= 1, got {steps}")
    t = np.arange(1, steps + 1)
    rng = make_rng(seed, key)

    if isinstance(schedule, Ordered):
        params = np.tile(np.array(schedule.coin.as_tuple()), (steps, 1))
    elif isinstance(schedule, (SDD2, SDDInf)):
        params = _disordered(schedule, rng, steps)
    elif isinstance(schedule, ADO):
        dt = schedule.delta_t
        if dt <= 0 or dt > steps:
            raise DomainError(f"delta_t must lie in [1, {steps}], got {dt}")
        params = _disordered(schedule.inner, rng, steps)
        ordered = ((t - 1) // dt) % 2 == 1
        params[ordered] = schedule.ordered_coin.as_tuple()
    elif isinstance(schedule, OrderRestart):
        if not 0 <= schedule.switch_step <= steps:
            raise DomainError(f"switch_step must lie in [0, {steps}]")
        params = _disordered(schedule.inner, rng, steps)
        params[t > schedule.switch_step] = schedule.ordered_coin.as_tuple()
    elif isinstance(schedule, WDDConst):
        params = _two_coin(rng.random(steps), schedule.p)
    elif isinstance(schedule, WDDTransient):
        if steps > schedule.horizon:
            raise DomainError(f"steps {steps} exceed transient horizon {schedule.horizon}")
        p = np.array([transient_p(schedule.shape, schedule.direction, int(k), schedule.horizon) for k in t])
        params = _two_coin(rng.random(steps), p)
    elif isinstance(schedule, PeriodicFourier):
        params = np.where((t % schedule.period == 0)[:, None], FOURIER, HADAMARD)
    else:
        raise DomainError(f"unknown schedule {schedule!r}")

    params = np.ascontiguousarray(params, dtype=float)
    params.flags.writeable = False
    return CoinSequence(params, seed, tuple(key), schedule.describe())
