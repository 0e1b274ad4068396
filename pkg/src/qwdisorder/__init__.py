"""Dynamically disordered one-dimensional quantum walks and the spin-position
entanglement they generate, averaged over Bloch-sphere grids of initial qubits."""

__version__ = "0.1.0"

from .coins import CoinMatrix, CoinParams, coin_matrix, fourier, hadamard, sample_su2_uniform, sample_two_coin
from .core_state import (
    GaussianSpec,
    QubitSpec,
    WalkState,
    make_gaussian_state,
    make_local_state,
    make_qubit,
    position_probabilities,
    position_variance,
)
from .ensemble import BlochGrid, EnsembleResult, average_entanglement, best_p_scan, bloch_grid, eta
from .entanglement import ReducedCoinState, entropy, reduce_coin
from .errors import CapacityError, ConsistencyError, DomainError
from .evolution import dense_oracle_evolve, evolve, step, trajectory
from .schedule import (
    ADO,
    SDD2,
    CoinSequence,
    OrderRestart,
    Ordered,
    PeriodicFourier,
    SDDInf,
    WDDConst,
    WDDTransient,
    generate_sequence,
    transient_p,
)
