"""Joint coin-position states of a one-dimensional walker.

A state stores the spin-up and spin-down amplitudes of every site in a
fixed window ``[origin_offset, origin_offset + width)``.  Windows are sized
up front from the number of steps that will be taken, since the support
grows by at most one site per side per step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import DomainError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class QubitSpec:
    """Initial coin state as a point (alpha, beta) on the Bloch sphere."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (0.0 <= self.alpha <= math.pi):
            raise DomainError(f"alpha must lie in [0, pi], got {self.alpha!r}")
        if not (0.0 <= self.beta <= TWO_PI):
            raise DomainError(f"beta must lie in [0, 2pi], got {self.beta!r}")


@dataclass(frozen=True)
class GaussianSpec:
    """Discrete Gaussian position profile truncated to ``|j| <= cutoff``."""

    sigma0: float
    cutoff: int = 100

    def __post_init__(self):
        if not self.sigma0 > 0:
            raise DomainError(f"sigma0 must be positive, got {self.sigma0!r}")
        if self.cutoff < 0:
            raise DomainError(f"cutoff must be non-negative, got {self.cutoff!r}")


PositionInit = Union[str, GaussianSpec]
"""Either the string ``"local"`` or a :class:`GaussianSpec`."""


@dataclass
class WalkState:
    """Amplitudes ``a(j)`` (spin up) and ``b(j)`` (spin down) on a site window.

    Column ``k`` of ``up_amps``/``down_amps`` holds site ``origin_offset + k``.
    Treat instances as values: operations return new states.
    """

    origin_offset: int
    up_amps: np.ndarray
    down_amps: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.up_amps = np.asarray(self.up_amps, dtype=np.complex128)
        self.down_amps = np.asarray(self.down_amps, dtype=np.complex128)
        if self.up_amps.shape != self.down_amps.shape or self.up_amps.ndim != 1:
            raise DomainError("up_amps and down_amps must be 1-D and equal length")

    @property
    def width(self) -> int:
        return self.up_amps.shape[0]

    @property
    def sites(self) -> np.ndarray:
        return np.arange(self.origin_offset, self.origin_offset + self.width)

    def norm(self) -> float:
        return float(
            np.sum(np.abs(self.up_amps) ** 2) + np.sum(np.abs(self.down_amps) ** 2)
        )

    def support(self) -> tuple[int, int]:
        """Half-open column range ``[lo, hi)`` holding every nonzero amplitude."""
        nz = np.flatnonzero((self.up_amps != 0) | (self.down_amps != 0))
        if nz.size == 0:
            return 0, 0
        return int(nz[0]), int(nz[-1]) + 1

    def amplitude(self, site: int) -> tuple[complex, complex]:
        k = site - self.origin_offset
        if not 0 <= k < self.width:
            return 0j, 0j
        return complex(self.up_amps[k]), complex(self.down_amps[k])

    def copy(self) -> "WalkState":
        return WalkState(self.origin_offset, self.up_amps.copy(), self.down_amps.copy())


def make_qubit(spec: QubitSpec) -> tuple[complex, complex]:
    """Spinor ``(cos(alpha/2), exp(i beta) sin(alpha/2))``."""
    return (
        complex(math.cos(spec.alpha / 2.0)),
        complex(np.exp(1j * spec.beta) * math.sin(spec.alpha / 2.0)),
    )


def gaussian_amplitudes(g: GaussianSpec) -> np.ndarray:
    """Unnormalized amplitudes ``exp(-j^2/4 sigma0^2) / (2 pi sigma0^2)^(1/4)``
    for ``j = -cutoff .. cutoff``."""
    j = np.arange(-g.cutoff, g.cutoff + 1, dtype=float)
    return np.exp(-(j**2) / (4.0 * g.sigma0**2)) / (TWO_PI * g.sigma0**2) ** 0.25


def position_profile(init: PositionInit, planned_steps: int) -> tuple[int, np.ndarray]:
    """Real, unit-norm position amplitudes on a window wide enough for
    ``planned_steps`` steps.  Returns ``(origin_offset, profile)``."""
    if planned_steps < 0:
        raise DomainError(f"planned_steps must be >= 0, got {planned_steps}")
    if isinstance(init, GaussianSpec):
        amps = gaussian_amplitudes(init)
        amps = amps / math.sqrt(math.fsum(amps**2))
        half = init.cutoff
    elif init == "local":
        amps = np.ones(1)
        half = 0
    else:
        raise DomainError(f"unknown position initializer {init!r}")
    reach = half + planned_steps
    profile = np.zeros(2 * reach + 1)
    profile[planned_steps : planned_steps + amps.size] = amps
    return -reach, profile


def _product_state(qubit: QubitSpec, init: PositionInit, planned_steps: int) -> WalkState:
    origin, profile = position_profile(init, planned_steps)
    up, down = make_qubit(qubit)
    return WalkState(origin, up * profile, down * profile)


def make_local_state(qubit: QubitSpec, planned_steps: int) -> WalkState:
    """Qubit placed on site 0; window ``[-planned_steps, planned_steps]``."""
    return _product_state(qubit, "local", planned_steps)


def make_gaussian_state(qubit: QubitSpec, g: GaussianSpec, planned_steps: int) -> WalkState:
    """Qubit times the truncated Gaussian profile, renormalized to unit norm.

    The window spans ``[-cutoff - planned_steps, cutoff + planned_steps]``.
    """
    return _product_state(qubit, g, planned_steps)


def position_probabilities(state: WalkState) -> list[tuple[int, float]]:
    """Nonzero ``(site, |a|^2 + |b|^2)`` pairs in increasing site order."""
    p = np.abs(state.up_amps) ** 2 + np.abs(state.down_amps) ** 2
    return [(int(s), float(v)) for s, v in zip(state.sites, p) if v > 0.0]


def position_variance(state: WalkState) -> float:
    p = np.abs(state.up_amps) ** 2 + np.abs(state.down_amps) ** 2
    j = state.sites.astype(float)
    mean = math.fsum(j * p)
    return math.fsum(j * j * p) - mean * mean
