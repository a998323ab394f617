"""Heralded nonunitary gates via one-ancilla unitary embeddings.

Core pieces: the repeat-until-success embedded gate, its closed-form
probability/fidelity trade-off, imaginary-time evolution of random-sign
Ising chains built from heralded bond gates, and two amplitude-amplified
variants that remove the post-selection overhead.
"""
from .backend import NAME as BACKEND_NAME
from .embedding import (
    DiagonalSigma,
    EmbeddingGate,
    RusTrajectory,
    decompose_and_normalize,
    embed,
    embed_raw,
    is_idempotent,
    load_matrix,
    load_sigma,
    rus_first_flip_ensemble,
    rus_run,
    target_state,
)
from .grover import (
    Method1Report,
    Method2Report,
    NoRootError,
    TransferMatrix2,
    epsilon_for_t,
    epsilon_from_s,
    failure_prob,
    grover_iteration,
    method1_run,
    method2_run,
    multi_transfer_eigenvalues,
    multi_transfer_matrix,
    optimal_t_roots,
    predicted_iterations,
    s_roots,
    success_prob_multi,
)
from .ising import (
    IsingChain,
    IteRunReport,
    bond_sigma,
    exact_ite,
    ground_fidelity,
    ground_subspace,
    ite_rus_protocol,
    ite_success_ensemble,
    random_chain,
)
from .rng import Rng
from .statevector import StateVector, fidelity, init_basis_state, uniform_superposition
from .tradeoff import (
    MomentSet,
    TradeoffQuery,
    UnboundedShots,
    cumulative_success,
    fidelity_after,
    limiting_success,
    limiting_success_detail,
    mean_shots,
    moments,
    multi_gate_cumulative,
    multi_threshold_shots,
    shape_factor,
    shot_prob,
    threshold_shots,
)

__version__ = "1.0.0"
