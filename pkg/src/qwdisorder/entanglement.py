"""Reduced coin state and spin-position entanglement entropy.

For a pure walker state the reduced coin matrix is ``[[A, gamma],
[conj(gamma), B]]`` with ``A = sum |a|^2``, ``B = sum |b|^2`` and
``gamma = sum a conj(b)``; its eigenvalues have the closed form
``1/2 +- sqrt(1/4 - A(1 - A) + |gamma|^2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core_state import WalkState
from .errors import ConsistencyError

CLAMP_TOL = 1e-12


@dataclass(frozen=True)
class ReducedCoinState:
    A: float
    B: float
    gamma: complex

    def to_array(self) -> np.ndarray:
        return np.array([[self.A, self.gamma], [np.conj(self.gamma), self.B]], dtype=np.complex128)


def reduce_coin(state: WalkState) -> ReducedCoinState:
    a, b = state.up_amps, state.down_amps
    A = math.fsum(a.real**2 + a.imag**2)
    B = math.fsum(b.real**2 + b.imag**2)
    return ReducedCoinState(A, B, complex(np.sum(a * np.conj(b))))


def eigenvalues(A, gamma):
    """Closed-form ``(lambda_plus, lambda_minus)``; vectorized over arrays.

    Radicands outside ``[0, 1/4]`` by more than 1e-12 raise
    :class:`ConsistencyError`; smaller excursions are clamped.
    """
    A = np.asarray(A, dtype=float)
    g2 = np.abs(gamma) ** 2
    rad = 0.25 - A * (1.0 - A) + g2
    if np.any(rad < -CLAMP_TOL) or np.any(rad > 0.25 + CLAMP_TOL):
        raise ConsistencyError(
            f"radicand range [{float(np.min(rad))!r}, {float(np.max(rad))!r}] "
            "outside [0, 1/4]: reduced state is not a density matrix"
        )
    root = np.sqrt(np.clip(rad, 0.0, 0.25))
    return 0.5 + root, 0.5 - root


def _h(lam: np.ndarray) -> np.ndarray:
    safe = np.where(lam > 0.0, lam, 1.0)
    return np.where(lam > 0.0, -lam * np.log2(safe), 0.0)


def entropy_from_accumulators(A, gamma) -> np.ndarray:
    """Base-2 von Neumann entropy for arrays of ``A`` and ``gamma``."""
    lp, lm = eigenvalues(A, gamma)
    return _h(lp) + _h(lm)


def entropy(rc: ReducedCoinState) -> float:
    return float(entropy_from_accumulators(rc.A, rc.gamma))
