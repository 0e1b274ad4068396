"""Average entanglement over a grid of initial qubits.

Two evaluation methods give the same numbers (to rounding):

``"superposition"``
    Valid when every qubit sees the same coin sequence.  The walk is linear,
    so the state grown from qubit ``(c0, c1)`` is ``c0 Psi_up + c1 Psi_down``
    where ``Psi_up``/``Psi_down`` start from pure spin up/down on the same
    position profile.  The reduced coin matrix of any qubit is then a
    quadratic form in ``(c0, c1)`` over 2x2 Gram blocks of the two basis
    walks, so the cost per realization is two walks plus ``O(n)`` per step.

``"direct"``
    Evolves every qubit explicitly in fixed-size chunks, optionally across
    worker processes.  Required for ``policy="per_qubit"``.

Chunking never depends on the worker count and the mean over qubits is an
exactly rounded sum in ascending qubit order, so results are bitwise
identical for any number of workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .core_state import PositionInit, QubitSpec, make_qubit, position_profile
from .entanglement import entropy_from_accumulators
from .errors import DomainError
from .evolution import propagate
from .schedule import CoinSchedule, CoinSequence, WDDConst, generate_sequence

POLICIES = ("shared", "per_qubit")
METHODS = ("auto", "superposition", "direct")
DEFAULT_CHUNK = 64
REALIZATION_BATCH = 16


@dataclass(frozen=True)
class BlochGrid:
    alpha_step: float
    beta_step: float
    qubits: tuple[QubitSpec, ...]

    def __len__(self) -> int:
        return len(self.qubits)

    def spinors(self) -> np.ndarray:
        """Array of shape (n, 2) with the spinor of every qubit."""
        return np.array([make_qubit(q) for q in self.qubits], dtype=np.complex128)


def _axis(step: float, upper: float) -> list[float]:
    count = int(math.floor(upper / step + 1e-9)) + 1
    return [min(k * step, upper) for k in range(count)]


def bloch_grid(alpha_step: float = 0.1, beta_step: float = 0.1) -> BlochGrid:
    """All ``(k alpha_step, l beta_step)`` with ``alpha <= pi``, ``beta <= 2 pi``,
    alpha-major."""
    if not (alpha_step > 0 and beta_step > 0):
        raise DomainError("grid steps must be positive")
    qubits = tuple(
        QubitSpec(a, b) for a in _axis(alpha_step, math.pi) for b in _axis(beta_step, 2 * math.pi)
    )
    return BlochGrid(alpha_step, beta_step, qubits)


@dataclass
class EnsembleResult:
    mean_entropy: np.ndarray
    seed: int
    realization_policy: str
    realizations: int = 1
    stderr: Optional[np.ndarray] = None
    final_entropy: Optional[np.ndarray] = None
    config: dict = field(default_factory=dict)

    @property
    def steps(self) -> int:
        return self.mean_entropy.shape[0] - 1


def _qubit_mean(entropies: np.ndarray) -> np.ndarray:
    """Exactly rounded mean over the last axis, ascending index order."""
    n = entropies.shape[-1]
    flat = entropies.reshape(-1, n)
    out = np.array([math.fsum(row) / n for row in flat])
    return out.reshape(entropies.shape[:-1])


def _basis_rows(profile: np.ndarray, n_seq: int) -> tuple[np.ndarray, np.ndarray]:
    up = np.zeros((2 * n_seq, profile.size), dtype=np.complex128)
    down = np.zeros_like(up)
    up[0::2] = profile
    down[1::2] = profile
    return up, down


def basis_grams(
    profile: np.ndarray,
    coin_mats: np.ndarray,
    record: Optional[Sequence[int]] = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Gram blocks of the spin-up/spin-down basis walks for several sequences.

    Parameters
    ----------
    profile : ndarray, shape (W,)
        Position amplitudes shared by both basis walks.
    coin_mats : ndarray, shape (S, N, 2, 2)
        One coin sequence per row.
    record : sequence of int, optional
        Time steps to keep; all ``t = 0..N`` by default.

    Returns
    -------
    g_aa, g_ab : ndarray, shape (len(record), S, 2, 2)
        ``g_aa[t, s, k, l] = sum_j a_k(j) conj(a_l(j))`` and
        ``g_ab[t, s, k, l] = sum_j a_k(j) conj(b_l(j))`` where ``k, l`` index
        the basis walk (0: started spin up, 1: started spin down).
    """
    n_seq, steps = coin_mats.shape[:2]
    times = list(range(steps + 1)) if record is None else list(record)
    slot = {t: i for i, t in enumerate(times)}
    g_aa = np.empty((len(times), n_seq, 2, 2), dtype=np.complex128)
    g_ab = np.empty_like(g_aa)

    def observe(t, a, b):
        i = slot.get(t)
        if i is None:
            return
        xa = a.reshape(n_seq, 2, -1)
        xb = b.reshape(n_seq, 2, -1)
        g_aa[i] = xa @ xa.conj().transpose(0, 2, 1)
        g_ab[i] = xa @ xb.conj().transpose(0, 2, 1)

    up, down = _basis_rows(profile, n_seq)
    nz = np.flatnonzero(profile)
    per_row = np.repeat(coin_mats, 2, axis=0).transpose(1, 0, 2, 3)
    propagate(up, down, (int(nz[0]), int(nz[-1]) + 1), per_row, observe)
    return g_aa, g_ab


def grams_to_entropy(g_aa: np.ndarray, g_ab: np.ndarray, spinors: np.ndarray) -> np.ndarray:
    """Entropy of every qubit from Gram blocks; shape ``g_aa.shape[:-2] + (n,)``."""
    w = spinors[:, :, None] * spinors[:, None, :].conj()
    A = np.einsum("...kl,nkl->...n", g_aa, w).real
    gamma = np.einsum("...kl,nkl->...n", g_ab, w)
    return entropy_from_accumulators(A, gamma)


def _direct_chunk(args) -> tuple[np.ndarray, np.ndarray]:
    spinors, profile, support, coins = args
    up = spinors[:, 0, None] * profile[None, :]
    down = spinors[:, 1, None] * profile[None, :]
    steps = coins.shape[0]
    A = np.empty((steps + 1, spinors.shape[0]))
    gamma = np.empty((steps + 1, spinors.shape[0]), dtype=np.complex128)

    def observe(t, a, b):
        A[t] = (a.real**2 + a.imag**2).sum(axis=1)
        gamma[t] = (a * b.conj()).sum(axis=1)

    propagate(up, down, support, coins, observe)
    return A, gamma


def _chunk_tasks(spinors, profile, support, coin_fn, chunk):
    for start in range(0, spinors.shape[0], chunk):
        stop = min(start + chunk, spinors.shape[0])
        yield spinors[start:stop], profile, support, coin_fn(start, stop)


def _run_direct(spinors, profile, coin_fn, steps, workers, chunk):
    nz = np.flatnonzero(profile)
    support = (int(nz[0]), int(nz[-1]) + 1)
    tasks = _chunk_tasks(spinors, profile, support, coin_fn, chunk)
    if workers <= 1:
        parts = [_direct_chunk(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_direct_chunk, tasks))
    A = np.concatenate([p[0] for p in parts], axis=1)
    gamma = np.concatenate([p[1] for p in parts], axis=1)
    return entropy_from_accumulators(A, gamma)


def average_entanglement(
    grid: BlochGrid,
    position_init: PositionInit,
    schedule: CoinSchedule,
    steps: int,
    seed: int = 0,
    policy: str = "shared",
    *,
    realizations: int = 1,
    workers: int = 1,
    method: str = "auto",
    chunk_size: int = DEFAULT_CHUNK,
    keep_final: bool = False,
) -> EnsembleResult:
    """Mean entanglement ``<S_E(t)>`` over the grid for ``t = 0..steps``.

    Realization ``r`` under ``policy="shared"`` uses the coin stream keyed
    ``(r,)``; under ``"per_qubit"`` qubit ``i`` uses ``(r, i)``.  With more
    than one realization the per-realization means are averaged and their
    standard error is reported.
    """
    if len(grid) == 0:
        raise DomainError("grid is empty")
    if steps < 0:
        raise DomainError("steps must be >= 0")
    if policy not in POLICIES:
        raise DomainError(f"unknown policy {policy!r}")
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}")
    if realizations < 1:
        raise DomainError("realizations must be >= 1")
    if method == "auto":
        method = "superposition" if policy == "shared" else "direct"
    if method == "superposition" and policy != "shared":
        raise DomainError("superposition method needs one coin sequence shared by all qubits")

    _, profile = position_profile(position_init, steps)
    spinors = grid.spinors()
    n = spinors.shape[0]
    def realizations_entropy():
        if steps == 0:
            for _ in range(realizations):
                yield np.zeros((1, n))
        elif method == "superposition":
            for start in range(0, realizations, REALIZATION_BATCH):
                rs = range(start, min(start + REALIZATION_BATCH, realizations))
                mats = np.stack([generate_sequence(schedule, steps, seed, (r,)).matrices() for r in rs])
                g_aa, g_ab = basis_grams(profile, mats)
                for k in range(len(rs)):
                    yield grams_to_entropy(g_aa[:, k], g_ab[:, k], spinors)
        else:
            for r in range(realizations):
                if policy == "shared":
                    mats = generate_sequence(schedule, steps, seed, (r,)).matrices()
                    coin_fn = lambda start, stop, m=mats: m
                else:
                    coin_fn = lambda start, stop, r=r: np.stack(
                        [generate_sequence(schedule, steps, seed, (r, i)).matrices() for i in range(start, stop)],
                        axis=1,
                    )
                yield _run_direct(spinors, profile, coin_fn, steps, workers, chunk_size)

    means, finals = [], []
    for ent in realizations_entropy():
        # initial states are product states; drop rounding residue at t = 0
        ent[0] = 0.0
        means.append(_qubit_mean(ent))
        if keep_final:
            finals.append(ent[-1])

    stacked = np.array(means)
    if realizations == 1:
        mean, stderr = stacked[0], None
    else:
        mean = _qubit_mean(stacked.T)
        stderr = stacked.std(axis=0, ddof=1) / math.sqrt(realizations)
    config = {
        "schedule": schedule.describe(),
        "position": position_init if isinstance(position_init, str) else repr(position_init),
        "steps": steps,
        "grid": (grid.alpha_step, grid.beta_step, n),
        "method": method,
    }
    return EnsembleResult(
        mean_entropy=mean,
        seed=seed,
        realization_policy=policy,
        realizations=realizations,
        stderr=stderr,
        final_entropy=np.mean(finals, axis=0) if keep_final else None,
        config=config,
    )


def replay_sequence(grid: BlochGrid, position_init: PositionInit, seq: CoinSequence) -> EnsembleResult:
    """Mean entanglement over the grid for one explicit coin sequence."""
    steps = len(seq)
    _, profile = position_profile(position_init, steps)
    g_aa, g_ab = basis_grams(profile, seq.matrices()[None])
    ent = grams_to_entropy(g_aa[:, 0], g_ab[:, 0], grid.spinors())
    ent[0] = 0.0
    config = {"schedule": seq.descriptor, "steps": steps, "method": "superposition"}
    return EnsembleResult(_qubit_mean(ent), seq.seed if seq.seed is not None else -1, "shared", config=config)


def eta(ado_result: EnsembleResult, sdd_result: EnsembleResult, t_ref: int = 1000) -> float:
    """Relative improvement ``<S_E(t_ref)>_ADO / <S_E(t_ref)>_SDD - 1``."""
    if t_ref > min(ado_result.steps, sdd_result.steps):
        raise DomainError(f"both series must cover t_ref={t_ref}")
    base = float(sdd_result.mean_entropy[t_ref])
    if base == 0.0:
        raise DomainError("reference entanglement is zero; eta undefined")
    return float(ado_result.mean_entropy[t_ref]) / base - 1.0


@dataclass
class PScan:
    p_values: np.ndarray
    mean_at_tref: np.ndarray
    t_ref: int
    stderr: Optional[np.ndarray] = None

    @property
    def best_p(self) -> float:
        return float(self.p_values[int(np.argmax(self.mean_at_tref))])

    def rows(self) -> list[tuple[float, float]]:
        return [(float(p), float(v)) for p, v in zip(self.p_values, self.mean_at_tref)]


def best_p_scan(
    p_values: Sequence[float],
    position_init: PositionInit,
    t_ref: int = 100,
    grid: Optional[BlochGrid] = None,
    seed: int = 0,
    *,
    realizations: int = 1,
    policy: str = "shared",
    batch: int = 256,
) -> PScan:
    """``<S_E(t_ref)>`` of constant-p weak disorder for each p, sorted by p.

    All p values reuse the same seed, so the scan compares schedules on
    common random numbers.
    """
    p_values = np.sort(np.asarray(p_values, dtype=float))
    if p_values.size == 0 or np.any((p_values < 0) | (p_values > 1)):
        raise DomainError("p values must be a nonempty subset of [0, 1]")
    grid = grid if grid is not None else bloch_grid()
    if policy != "shared":
        results = [
            average_entanglement(grid, position_init, WDDConst(float(p)), t_ref, seed, policy, realizations=realizations)
            for p in p_values
        ]
        values = np.array([res.mean_entropy[t_ref] for res in results])
        errs = None if realizations == 1 else np.array([res.stderr[t_ref] for res in results])
        return PScan(p_values, values, t_ref, errs)

    if t_ref < 1:
        raise DomainError("t_ref must be >= 1")
    _, profile = position_profile(position_init, t_ref)
    spinors = grid.spinors()
    jobs = [(p, r) for p in p_values for r in range(realizations)]
    per_job = np.empty(len(jobs))
    for start in range(0, len(jobs), batch):
        chunk = jobs[start : start + batch]
        mats = np.stack([generate_sequence(WDDConst(float(p)), t_ref, seed, (r,)).matrices() for p, r in chunk])
        g_aa, g_ab = basis_grams(profile, mats, record=[t_ref])
        ent = grams_to_entropy(g_aa[0], g_ab[0], spinors)
        per_job[start : start + len(chunk)] = _qubit_mean(ent)
    table = per_job.reshape(len(p_values), realizations)
    values = _qubit_mean(table)
    errs = None if realizations == 1 else table.std(axis=1, ddof=1) / math.sqrt(realizations)
    return PScan(p_values, values, t_ref, errs)
