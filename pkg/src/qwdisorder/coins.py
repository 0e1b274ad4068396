"""SU(2) coins ``[[sqrt(q), sqrt(1-q) e^{i theta}], [sqrt(1-q) e^{i phi},
-sqrt(q) e^{i(theta+phi)}]]`` and the random draws used by disordered walks.

Random streams are any object with a ``random()`` method returning a float
in ``[0, 1)``, normally a :class:`numpy.random.Generator`.  Every draw
consumes uniforms in a fixed order so that sequences are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Protocol

import numpy as np

from .errors import DomainError

TWO_PI = 2.0 * math.pi


class UniformStream(Protocol):
    def random(self) -> float: ...


@dataclass(frozen=True)
class CoinParams:
    q: float
    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.q <= 1.0:
            raise DomainError(f"q must lie in [0, 1], got {self.q!r}")
        for name in ("theta", "phi"):
            v = getattr(self, name)
            if not 0.0 <= v <= TWO_PI:
                raise DomainError(f"{name} must lie in [0, 2pi], got {v!r}")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.q, self.theta, self.phi)


@dataclass(frozen=True)
class CoinMatrix:
    c00: complex
    c01: complex
    c10: complex
    c11: complex

    def to_array(self) -> np.ndarray:
        return np.array([[self.c00, self.c01], [self.c10, self.c11]], dtype=np.complex128)


def coin_matrix(p: CoinParams) -> CoinMatrix:
    m = coin_matrices(np.array([p.as_tuple()]))[0]
    return CoinMatrix(complex(m[0, 0]), complex(m[0, 1]), complex(m[1, 0]), complex(m[1, 1]))


def coin_matrices(params: np.ndarray) -> np.ndarray:
    """Vectorized :func:`coin_matrix` over rows ``(q, theta, phi)``.

    Returns an array of shape ``params.shape[:-1] + (2, 2)``.  No range
    validation is done here; callers pass parameters built from
    :class:`CoinParams` or from :func:`sample_su2_uniform`-style draws.
    """
    params = np.asarray(params, dtype=float)
    q, theta, phi = params[..., 0], params[..., 1], params[..., 2]
    sq, sr = np.sqrt(q), np.sqrt(1.0 - q)
    out = np.empty(params.shape[:-1] + (2, 2), dtype=np.complex128)
    out[..., 0, 0] = sq
    out[..., 0, 1] = sr * np.exp(1j * theta)
    out[..., 1, 0] = sr * np.exp(1j * phi)
    out[..., 1, 1] = -sq * np.exp(1j * (theta + phi))
    return out


def hadamard() -> CoinParams:
    return CoinParams(0.5, 0.0, 0.0)


def fourier() -> CoinParams:
    return CoinParams(0.5, math.pi / 2, math.pi / 2)


def sample_su2_uniform(rng: UniformStream) -> CoinParams:
    """Uniform draw over the parameter box, not Haar measure.

    Consumes three uniforms, in the order q, theta, phi.
    """
    rq = rng.random()
    rt = rng.random()
    rp = rng.random()
    return CoinParams(float(rq), TWO_PI * float(rt), TWO_PI * float(rp))


def sample_two_coin(prob_fourier: float, rng: UniformStream) -> CoinParams:
    """Fourier with probability ``prob_fourier``, otherwise Hadamard.

    Consumes exactly one uniform ``u``; the coin is Fourier iff ``u < prob_fourier``.
    """
    if not 0.0 <= prob_fourier <= 1.0:
        raise DomainError(f"prob_fourier must lie in [0, 1], got {prob_fourier!r}")
    return fourier() if rng.random() < prob_fourier else hadamard()
