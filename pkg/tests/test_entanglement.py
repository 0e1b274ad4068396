import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qwdisorder.core_state import QubitSpec, WalkState, make_local_state
from qwdisorder.entanglement import (
    ReducedCoinState,
    eigenvalues,
    entropy,
    entropy_from_accumulators,
    reduce_coin,
)
from qwdisorder.errors import ConsistencyError
from qwdisorder.evolution import evolve
from qwdisorder.schedule import SDDInf, Ordered, generate_sequence

FIXTURE_SE = 2 - 0.75 * math.log2(3)


def generic_entropy(rho):
    ev = np.linalg.eigvalsh(rho)
    ev = ev[ev > 0]
    return float(-np.sum(ev * np.log2(ev)))


def test_reduce_product_and_pole():
    rc = reduce_coin(make_local_state(QubitSpec(math.pi / 2, 0.0), 0))
    assert rc.A == pytest.approx(0.5) and rc.B == pytest.approx(0.5) and abs(rc.gamma) == pytest.approx(0.5)
    rc = reduce_coin(make_local_state(QubitSpec(0.0, 0.0), 0))
    assert (rc.A, rc.B, rc.gamma) == (1, 0, 0)


def test_two_step_fixture():
    s = evolve(make_local_state(QubitSpec(math.pi / 2, math.pi / 2), 2), generate_sequence(Ordered(), 2))
    rc = reduce_coin(s)
    assert abs(rc.A - 0.5) < 1e-12 and abs(rc.gamma - (-0.25j)) < 1e-12
    assert abs(entropy(rc) - FIXTURE_SE) < 1e-12


def test_entropy_reference_points():
    assert entropy(ReducedCoinState(1.0, 0.0, 0j)) == 0
    assert entropy(ReducedCoinState(0.5, 0.5, 0j)) == 1
    lp, lm = eigenvalues(0.5, 0.25)
    assert (float(lp), float(lm)) == (0.75, 0.25)
    rc = ReducedCoinState(0.5, 0.5, 0.25j)
    assert abs(entropy(rc) - FIXTURE_SE) < 1e-15
    assert abs(generic_entropy(rc.to_array()) - FIXTURE_SE) < 1e-12


def test_clamping_and_errors():
    # tiny negative radicand from rounding is clamped
    assert entropy(ReducedCoinState(0.5, 0.5, complex(0.5 - 1e-17, 0))) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ConsistencyError):
        entropy(ReducedCoinState(0.5, 0.5, 0.6 + 0j))


@given(st.floats(0, 1), st.floats(0, 1), st.floats(0, 2 * math.pi))
def test_entropy_bounds_and_phase(A, frac, ph):
    g = frac * math.sqrt(A * (1 - A))
    s1 = entropy_from_accumulators(A, g)
    s2 = entropy_from_accumulators(A, g * np.exp(1j * ph))
    assert 0 <= s1 <= 1
    lp, lm = eigenvalues(A, g)
    assert lp + lm == 1
    assert abs(s1 - s2) < 1e-15


@given(st.floats(0, 2 * math.pi), st.integers(0, 10_000))
def test_global_phase_invariance(ph, seed):
    s = evolve(make_local_state(QubitSpec(1.0, 2.0), 8), generate_sequence(SDDInf(), 8, seed=seed))
    u = np.exp(1j * ph)
    t = WalkState(s.origin_offset, s.up_amps * u, s.down_amps * u)
    assert abs(entropy(reduce_coin(s)) - entropy(reduce_coin(t))) < 1e-14


def test_reduced_invariants_after_evolution():
    s = evolve(make_local_state(QubitSpec(2.5, 0.3), 50), generate_sequence(SDDInf(), 50, seed=3))
    rc = reduce_coin(s)
    assert abs(rc.A + rc.B - 1) < 1e-10
    assert -1e-12 <= rc.A * rc.B - abs(rc.gamma) ** 2 <= 0.25 + 1e-12
