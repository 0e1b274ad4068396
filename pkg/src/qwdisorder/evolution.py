"""Coin-then-shift stepping of walker states.

One step applies the coin to every site, then moves spin-up amplitude one
site right and spin-down amplitude one site left.  The batched kernel
:func:`propagate` advances many walkers at once (rows of 2-D arrays),
double-buffering two amplitude arrays and touching only the active support,
which grows by one column per side per step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from .coins import CoinMatrix
from .core_state import WalkState
from .entanglement import ReducedCoinState, reduce_coin
from .errors import CapacityError, DomainError
from .schedule import CoinSequence

MAX_ORACLE_DIM = 2048

Observer = Callable[[int, np.ndarray, np.ndarray], None]


@dataclass(frozen=True)
class StepReport:
    step_index: int
    norm_after: float
    support_halfwidth: int


def _as_array(coin: Union[CoinMatrix, np.ndarray]) -> np.ndarray:
    if isinstance(coin, CoinMatrix):
        return coin.to_array()
    return np.asarray(coin, dtype=np.complex128)


def propagate(
    up: np.ndarray,
    down: np.ndarray,
    support: tuple[int, int],
    coins: np.ndarray,
    observe: Optional[Observer] = None,
) -> tuple[np.ndarray, np.ndarray, tuple[int, int]]:
    """Advance a batch of walkers through ``len(coins)`` steps.

    Parameters
    ----------
    up, down : ndarray, shape (n, W)
        Spin-up and spin-down amplitudes, one walker per row.  Not modified.
    support : (lo, hi)
        Column range outside of which every row is zero.
    coins : ndarray, shape (N, 2, 2) or (N, n, 2, 2)
        Coin per step, shared by all rows or given per row.
    observe : callable, optional
        Called as ``observe(t, a, b)`` for ``t = 0..N`` with views of the
        active columns.  The views are overwritten by later steps.

    Returns
    -------
    up, down, support
        Final amplitudes (fresh arrays) and their support.
    """
    a = np.array(up, dtype=np.complex128, order="C", ndmin=2)
    b = np.array(down, dtype=np.complex128, order="C", ndmin=2)
    na = np.zeros_like(a)
    nb = np.zeros_like(b)
    tmp = np.empty_like(a)
    width = a.shape[1]
    lo, hi = support
    coins = np.asarray(coins, dtype=np.complex128)
    shared = coins.ndim == 3

    if observe is not None:
        observe(0, a[:, lo:hi], b[:, lo:hi])
    for t in range(coins.shape[0]):
        if lo < 1 or hi > width - 1:
            raise CapacityError(
                f"step {t + 1}: support [{lo}, {hi}) leaves no free site in window of width {width}"
            )
        c = coins[t]
        if shared:
            c00, c01, c10, c11 = c[0, 0], c[0, 1], c[1, 0], c[1, 1]
        else:
            c00, c01 = c[:, 0, 0, None], c[:, 0, 1, None]
            c10, c11 = c[:, 1, 0, None], c[:, 1, 1, None]
        m = hi - lo
        sa, sb, scratch = a[:, lo:hi], b[:, lo:hi], tmp[:, :m]
        va, vb = na[:, lo + 1 : hi + 1], nb[:, lo - 1 : hi - 1]
        np.multiply(sa, c00, out=va)
        np.multiply(sb, c01, out=scratch)
        va += scratch
        np.multiply(sa, c10, out=vb)
        np.multiply(sb, c11, out=scratch)
        vb += scratch
        na[:, lo - 1 : lo + 1] = 0
        nb[:, hi - 1 : hi + 1] = 0
        lo, hi = lo - 1, hi + 1
        a, na = na, a
        b, nb = nb, b
        if observe is not None:
            observe(t + 1, a[:, lo:hi], b[:, lo:hi])
    return a, b, (lo, hi)


def _support_of(state: WalkState) -> tuple[int, int]:
    lo, hi = state.support()
    if lo == hi:
        raise DomainError("state has no nonzero amplitude")
    return lo, hi


def step(state: WalkState, coin: Union[CoinMatrix, np.ndarray]) -> WalkState:
    """One coin-and-shift step; raises :class:`CapacityError` if the
    support touches either edge of the window."""
    c = _as_array(coin)[None]
    a, b, _ = propagate(state.up_amps, state.down_amps, _support_of(state), c)
    return WalkState(state.origin_offset, a[0], b[0])


def evolve(state: WalkState, seq: Union[CoinSequence, np.ndarray]) -> WalkState:
    """Apply the coins of ``seq`` in time order.  An empty sequence is the identity."""
    mats = seq.matrices() if isinstance(seq, CoinSequence) else np.asarray(seq)
    if mats.shape[0] == 0:
        return state.copy()
    a, b, _ = propagate(state.up_amps, state.down_amps, _support_of(state), mats)
    return WalkState(state.origin_offset, a[0], b[0])


@dataclass
class Trajectory:
    final: WalkState
    reduced: list[ReducedCoinState]
    reports: list[StepReport]
    states: Optional[list[WalkState]] = None


def trajectory(state: WalkState, seq: Union[CoinSequence, np.ndarray], full: bool = False) -> Trajectory:
    """Evolve while recording the reduced coin state (and optionally a full
    copy of the state) after every step, ``t = 0..N``."""
    mats = seq.matrices() if isinstance(seq, CoinSequence) else np.asarray(seq)
    origin, width = state.origin_offset, state.width
    reduced, reports, states = [], [], [] if full else None
    center = -origin

    def record(t, a, b):
        snap = WalkState(origin, np.zeros(width, complex), np.zeros(width, complex))
        snap.up_amps[lo0 - t : hi0 + t] = a[0]
        snap.down_amps[lo0 - t : hi0 + t] = b[0]
        reduced.append(reduce_coin(snap))
        lo, hi = snap.support()
        half = max(center - lo, hi - 1 - center, 0) if hi > lo else 0
        reports.append(StepReport(t, snap.norm(), half))
        if full:
            states.append(snap)

    lo0, hi0 = _support_of(state)
    a, b, _ = propagate(state.up_amps, state.down_amps, (lo0, hi0), mats, record)
    return Trajectory(WalkState(origin, a[0], b[0]), reduced, reports, states)


def dense_step_matrix(coin: Union[CoinMatrix, np.ndarray], width: int) -> np.ndarray:
    """Explicit ``S (C x 1)`` on a truncated lattice of ``width`` sites.

    Basis ordering is ``(spin, column)`` flattened spin-major.  Amplitude
    shifted past an edge is dropped, so the matrix is only unitary on states
    that stay away from the edges.
    """
    dim = 2 * width
    if dim > MAX_ORACLE_DIM:
        raise DomainError(f"dense oracle refused: dimension {dim} > {MAX_ORACLE_DIM}")
    c = _as_array(coin)
    coin_full = np.kron(c, np.eye(width))
    shift = np.zeros((dim, dim))
    for k in range(width):
        if k + 1 < width:
            shift[k + 1, k] = 1.0
        if k - 1 >= 0:
            shift[width + k - 1, width + k] = 1.0
    return shift @ coin_full


def dense_oracle_evolve(state: WalkState, seq: Union[CoinSequence, np.ndarray]) -> WalkState:
    """Reference evolution by full matrix-vector products.  Test scale only."""
    mats = seq.matrices() if isinstance(seq, CoinSequence) else np.asarray(seq)
    width = state.width
    if 2 * width > MAX_ORACLE_DIM:
        raise DomainError(f"dense oracle refused: dimension {2 * width} > {MAX_ORACLE_DIM}")
    psi = np.concatenate([state.up_amps, state.down_amps])
    for c in mats:
        psi = dense_step_matrix(c, width) @ psi
    return WalkState(state.origin_offset, psi[:width].copy(), psi[width:].copy())
