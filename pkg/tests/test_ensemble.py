import math

import numpy as np
import pytest

from qwdisorder.core_state import GaussianSpec, QubitSpec
from qwdisorder.ensemble import (
    BlochGrid,
    average_entanglement,
    best_p_scan,
    bloch_grid,
    eta,
    replay_sequence,
)
from qwdisorder.entanglement import entropy, reduce_coin
from qwdisorder.errors import DomainError
from qwdisorder.evolution import evolve
from qwdisorder.core_state import make_gaussian_state, make_local_state
from qwdisorder.schedule import ADO, SDD2, Ordered, SDDInf, WDDConst, WDDTransient, generate_sequence

SMALL = bloch_grid(1.0, 1.5)


def test_grid_sizes():
    assert len(bloch_grid()) == 2016
    assert len(bloch_grid(math.pi, 2 * math.pi)) == 4
    assert {(q.alpha, q.beta) for q in bloch_grid(math.pi, 2 * math.pi).qubits} == {
        (0.0, 0.0), (0.0, 2 * math.pi), (math.pi, 0.0), (math.pi, 2 * math.pi)
    }
    assert len(bloch_grid(0.5, 0.5)) == 7 * 13
    alphas = sorted({q.alpha for q in bloch_grid().qubits})
    assert len(alphas) == 32 and alphas[-1] == pytest.approx(3.1)


def test_grid_rejects_bad_step():
    with pytest.raises(DomainError):
        bloch_grid(0.0, 0.1)


def test_zero_steps_product_state():
    grid = BlochGrid(0, 0, (QubitSpec(0.0, 0.0),))
    res = average_entanglement(grid, "local", SDD2(), 0, seed=1)
    assert res.mean_entropy.tolist() == [0.0]


def brute_force_mean(grid, init, seq):
    """Per-qubit evolution through the single-walker API, averaged by hand."""
    steps = len(seq)
    vals = np.zeros((steps + 1, len(grid)))
    for i, q in enumerate(grid.qubits):
        state = make_local_state(q, steps) if init == "local" else make_gaussian_state(q, init, steps)
        vals[0, i] = entropy(reduce_coin(state))
        for t in range(1, steps + 1):
            state = evolve(state, seq.matrices()[t - 1 : t])
            vals[t, i] = entropy(reduce_coin(state))
    return vals.mean(axis=1)


@pytest.mark.parametrize("init", ["local", GaussianSpec(2.0, 12)])
@pytest.mark.parametrize("method", ["superposition", "direct"])
def test_methods_match_brute_force(init, method):
    res = average_entanglement(SMALL, init, SDDInf(), 12, seed=4, method=method)
    expected = brute_force_mean(SMALL, init, generate_sequence(SDDInf(), 12, 4, (0,)))
    assert np.max(np.abs(res.mean_entropy - expected)) < 1e-12


def test_per_qubit_policy_uses_distinct_streams():
    a = average_entanglement(SMALL, "local", SDD2(), 20, seed=3, policy="per_qubit")
    b = average_entanglement(SMALL, "local", SDD2(), 20, seed=3, policy="per_qubit")
    shared = average_entanglement(SMALL, "local", SDD2(), 20, seed=3)
    assert np.array_equal(a.mean_entropy, b.mean_entropy)
    assert not np.array_equal(a.mean_entropy, shared.mean_entropy)
    with pytest.raises(DomainError):
        average_entanglement(SMALL, "local", SDD2(), 20, policy="per_qubit", method="superposition")


def test_workers_bitwise_identical():
    grid = bloch_grid(0.8, 0.8)
    kw = dict(method="direct", chunk_size=8)
    one = average_entanglement(grid, GaussianSpec(2.0, 10), SDDInf(), 30, 2, **kw, workers=1)
    two = average_entanglement(grid, GaussianSpec(2.0, 10), SDDInf(), 30, 2, **kw, workers=2)
    assert one.mean_entropy.tobytes() == two.mean_entropy.tobytes()
    per = dict(method="direct", chunk_size=8, policy="per_qubit")
    one = average_entanglement(grid, "local", SDD2(), 30, 2, **per, workers=1)
    three = average_entanglement(grid, "local", SDD2(), 30, 2, **per, workers=3)
    assert one.mean_entropy.tobytes() == three.mean_entropy.tobytes()


def test_reproducible_and_bounded():
    a = average_entanglement(bloch_grid(0.5, 0.5), "local", WDDConst(0.2), 60, seed=9, realizations=3)
    b = average_entanglement(bloch_grid(0.5, 0.5), "local", WDDConst(0.2), 60, seed=9, realizations=3)
    assert a.mean_entropy.tobytes() == b.mean_entropy.tobytes()
    assert np.all((a.mean_entropy >= 0) & (a.mean_entropy <= 1))
    assert a.stderr is not None and a.stderr.shape == a.mean_entropy.shape


def test_mean_permutation_invariant():
    grid = bloch_grid(0.5, 0.5)
    qubits = list(grid.qubits)
    np.random.default_rng(0).shuffle(qubits)
    shuffled = BlochGrid(grid.alpha_step, grid.beta_step, tuple(qubits))
    a = average_entanglement(grid, "local", SDD2(), 40, seed=1)
    b = average_entanglement(shuffled, "local", SDD2(), 40, seed=1)
    assert np.max(np.abs(a.mean_entropy - b.mean_entropy)) < 1e-12


def test_wdd_half_equals_sdd2():
    a = average_entanglement(SMALL, "local", WDDConst(0.5), 50, seed=6)
    b = average_entanglement(SMALL, "local", SDD2(), 50, seed=6)
    assert a.mean_entropy.tobytes() == b.mean_entropy.tobytes()


def test_eta_identical_is_zero():
    r = average_entanglement(SMALL, "local", SDD2(), 30, seed=1)
    assert eta(r, r, t_ref=30) == 0
    with pytest.raises(DomainError):
        eta(r, r, t_ref=31)


def test_pscan_endpoints_match_runs():
    grid = bloch_grid(0.5, 0.5)
    scan = best_p_scan([0.5, 0.0, 0.2], "local", t_ref=40, grid=grid, seed=5)
    assert list(scan.p_values) == [0.0, 0.2, 0.5]
    ordered = average_entanglement(grid, "local", Ordered(), 40, seed=5)
    sdd = average_entanglement(grid, "local", SDD2(), 40, seed=5)
    assert scan.mean_at_tref[0] == ordered.mean_entropy[40]
    assert scan.mean_at_tref[2] == pytest.approx(sdd.mean_entropy[40], abs=1e-14)
    assert scan.best_p in (0.2, 0.5)


def test_pscan_per_qubit_runs():
    scan = best_p_scan([0.0, 0.1], "local", t_ref=10, grid=SMALL, seed=5, policy="per_qubit")
    assert scan.mean_at_tref.shape == (2,)


def test_replay_matches_schedule_run():
    seq = generate_sequence(ADO(SDD2(), 5), 30, seed=2, key=(0,))
    a = replay_sequence(SMALL, GaussianSpec(1.0, 8), seq)
    b = average_entanglement(SMALL, GaussianSpec(1.0, 8), ADO(SDD2(), 5), 30, seed=2)
    assert a.mean_entropy.tobytes() == b.mean_entropy.tobytes()


def test_transient_schedule_runs():
    r = average_entanglement(SMALL, "local", WDDTransient("linear", "order_to_disorder", 20), 20)
    assert r.steps == 20


def test_realization_batches_match_single_replays():
    # 18 realizations cross one batch boundary
    res = average_entanglement(SMALL, "local", SDDInf(), 12, seed=5, realizations=18)
    singles = [replay_sequence(SMALL, "local", generate_sequence(SDDInf(), 12, 5, (r,))).mean_entropy for r in range(18)]
    assert np.max(np.abs(res.mean_entropy - np.mean(singles, axis=0))) < 1e-14
