import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qwdisorder.coins import CoinParams, coin_matrix, hadamard
from qwdisorder.core_state import (
    GaussianSpec,
    QubitSpec,
    WalkState,
    make_gaussian_state,
    make_local_state,
    position_probabilities,
)
from qwdisorder.errors import CapacityError, DomainError
from qwdisorder.evolution import (
    dense_oracle_evolve,
    dense_step_matrix,
    evolve,
    step,
    trajectory,
)
from qwdisorder.schedule import ADO, SDD2, Ordered, SDDInf, WDDConst, generate_sequence

SCHEDULES = [SDD2(), SDDInf(), WDDConst(0.1), ADO(SDD2(), 2), Ordered(hadamard())]
R2 = math.sqrt(2)


def test_diagonal_coin_pure_shift():
    s = step(make_local_state(QubitSpec(0, 0), 1), coin_matrix(CoinParams(1.0, 0.0, 0.0)))
    assert position_probabilities(s) == [(1, 1.0)]
    assert s.amplitude(1) == (1, 0)


def test_hadamard_one_step():
    s = step(make_local_state(QubitSpec(0, 0), 1), coin_matrix(hadamard()))
    a1, b1 = s.amplitude(1)
    am, bm = s.amplitude(-1)
    assert abs(a1 - 1 / R2) < 1e-15 and b1 == 0
    assert abs(bm - 1 / R2) < 1e-15 and am == 0


def test_two_hadamard_steps_hand_values():
    s = make_local_state(QubitSpec(math.pi / 2, math.pi / 2), 2)
    out = evolve(s, generate_sequence(Ordered(hadamard()), 2))
    k = 2 * R2
    assert abs(out.amplitude(2)[0] - (1 + 1j) / k) < 1e-15
    assert abs(out.amplitude(0)[0] - (1 - 1j) / k) < 1e-15
    assert abs(out.amplitude(0)[1] - (1 + 1j) / k) < 1e-15
    assert abs(out.amplitude(-2)[1] + (1 - 1j) / k) < 1e-15
    assert out.amplitude(2)[1] == 0 and out.amplitude(-2)[0] == 0


def test_empty_sequence_is_identity():
    s = make_local_state(QubitSpec(1.0, 1.0), 3)
    out = evolve(s, np.zeros((0, 2, 2)))
    assert np.array_equal(out.up_amps, s.up_amps) and np.array_equal(out.down_amps, s.down_amps)


def test_capacity_error():
    s = make_local_state(QubitSpec(0.5, 0.5), 0)
    with pytest.raises(CapacityError):
        step(s, coin_matrix(hadamard()))
    s = make_local_state(QubitSpec(0.5, 0.5), 3)
    with pytest.raises(CapacityError):
        evolve(s, generate_sequence(SDD2(), 4))


@given(
    st.floats(0, math.pi),
    st.floats(0, 2 * math.pi),
    st.floats(0, 1),
    st.floats(0, 2 * math.pi),
    st.floats(0, 2 * math.pi),
)
def test_step_preserves_norm(alpha, beta, q, theta, phi):
    s = make_gaussian_state(QubitSpec(alpha, beta), GaussianSpec(3.0, 20), 1)
    out = step(s, coin_matrix(CoinParams(q, theta, phi)))
    assert abs(out.norm() - s.norm()) < 1e-12


def test_parity_and_support():
    s = make_local_state(QubitSpec(1.2, 0.4), 10)
    tr = trajectory(s, generate_sequence(SDDInf(), 10, seed=4), full=True)
    for t, snap in enumerate(tr.states):
        for j, p in zip(snap.sites, np.abs(snap.up_amps) ** 2 + np.abs(snap.down_amps) ** 2):
            if (j + t) % 2:
                assert p == 0
            if abs(j) > t:
                assert p == 0
    assert [r.step_index for r in tr.reports] == list(range(11))
    assert all(abs(r.norm_after - 1) < 1e-10 for r in tr.reports)
    assert tr.reports[-1].support_halfwidth <= 10


def test_norm_drift_1000_steps():
    s = make_local_state(QubitSpec(2.0, 5.0), 1000)
    out = evolve(s, generate_sequence(SDDInf(), 1000, seed=1))
    assert abs(out.norm() - 1) < 1e-9


def test_oracle_one_step():
    s = make_local_state(QubitSpec(0.0, 0.0), 1)
    h = coin_matrix(hadamard())
    a = step(s, h)
    b = dense_oracle_evolve(s, [h.to_array()])
    assert np.max(np.abs(a.up_amps - b.up_amps)) < 1e-13
    assert np.max(np.abs(a.down_amps - b.down_amps)) < 1e-13


def test_oracle_matrix_unitary():
    # the truncated matrix drops edge amplitude; its ring closure must be unitary
    m = dense_step_matrix(coin_matrix(CoinParams(0.3, 1.0, 2.0)), 21)
    c = coin_matrix(CoinParams(0.3, 1.0, 2.0)).to_array()
    ring = np.kron(np.diag([1, 0]), np.roll(np.eye(21), 1, axis=0)) + np.kron(
        np.diag([0, 1]), np.roll(np.eye(21), -1, axis=0)
    )
    u = ring @ np.kron(c, np.eye(21))
    assert np.max(np.abs(u @ u.conj().T - np.eye(42))) < 1e-12
    inner = np.zeros(42, complex)
    inner[10] = inner[31] = 1 / R2
    assert abs(np.linalg.norm(m @ inner) - 1) < 1e-12


def test_oracle_refuses_large():
    s = make_local_state(QubitSpec(0, 0), 1100)
    with pytest.raises(DomainError):
        dense_oracle_evolve(s, generate_sequence(SDD2(), 2))


def test_oracle_sdd2_ten_steps():
    s = make_local_state(QubitSpec(1.0, 3.0), 10)
    seq = generate_sequence(SDD2(), 10, seed=77)
    a, b = evolve(s, seq), dense_oracle_evolve(s, seq)
    assert max(np.max(np.abs(a.up_amps - b.up_amps)), np.max(np.abs(a.down_amps - b.down_amps))) < 1e-12


def test_batched_rows_match_single():
    from qwdisorder.evolution import propagate

    seqs = [generate_sequence(SDDInf(), 15, seed=s).matrices() for s in range(3)]
    states = [make_local_state(QubitSpec(0.4 * (k + 1), 1.0 + k), 15) for k in range(3)]
    up = np.stack([s.up_amps for s in states])
    down = np.stack([s.down_amps for s in states])
    centre = 15
    a, b, _ = propagate(up, down, (centre, centre + 1), np.stack(seqs, axis=1))
    for k in range(3):
        single = evolve(states[k], seqs[k])
        assert np.array_equal(a[k], single.up_amps) and np.array_equal(b[k], single.down_amps)
