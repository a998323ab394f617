"""Dense state-vector engine.

Conventions (shared by every module):
  * little-endian — qubit 0 is the least-significant bit of the basis index;
  * ancillas occupy the highest qubit indices of a register;
  * global phase is never compared; ``fidelity`` is the only comparison
    primitive.

Gates are applied in place over strided amplitude groups, never by building
the full 2^n x 2^n matrix.
"""
from __future__ import annotations

import math

import numpy as np

from . import backend
from .rng import Rng

UNITARY_ATOL = 1e-10
NORM_ATOL = 1e-10
ZERO_PROB = 1e-14


class StateVector:
    """Complex amplitudes over ``num_qubits`` qubits, unit 2-norm.

    ``valid`` is cleared when a projection lands on a zero-probability
    branch; such a state carries no amplitudes worth reading.
    """

    __slots__ = ("num_qubits", "amplitudes", "valid", "gate_count")

    def __init__(self, num_qubits: int, amplitudes: np.ndarray, *, valid: bool = True):
        if num_qubits < 1:
            raise ValueError("need at least one qubit")
        if amplitudes.shape != (1 << num_qubits,):
            raise ValueError(
                f"amplitude length {amplitudes.shape} does not match {num_qubits} qubits"
            )
        self.num_qubits = num_qubits
        self.amplitudes = np.ascontiguousarray(amplitudes, dtype=np.complex128)
        self.valid = valid
        self.gate_count = 0

    @property
    def dim(self) -> int:
        return 1 << self.num_qubits

    def copy(self) -> "StateVector":
        s = StateVector(self.num_qubits, self.amplitudes.copy(), valid=self.valid)
        s.gate_count = self.gate_count
        return s

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def renormalize(self) -> None:
        n = self.norm()
        if n < math.sqrt(ZERO_PROB):
            raise ZeroNormError("state annihilated; cannot renormalize")
        self.amplitudes /= n

    def probabilities(self) -> np.ndarray:
        a = self.amplitudes
        return a.real**2 + a.imag**2


class ZeroNormError(ValueError):
    """Raised when an operation would renormalize a (numerically) zero state."""


def init_basis_state(num_qubits: int, basis_index: int) -> StateVector:
    if num_qubits < 1:
        raise ValueError("need at least one qubit")
    if not 0 <= basis_index < (1 << num_qubits):
        raise ValueError(f"basis index {basis_index} out of range for {num_qubits} qubits")
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[basis_index] = 1.0
    return StateVector(num_qubits, amps)


def uniform_superposition(num_qubits: int) -> StateVector:
    amps = np.full(1 << num_qubits, 1.0 / math.sqrt(1 << num_qubits), dtype=np.complex128)
    return StateVector(num_qubits, amps)


def is_unitary(gate: np.ndarray, atol: float = UNITARY_ATOL) -> bool:
    d = gate.shape[0]
    return gate.shape == (d, d) and np.allclose(gate.conj().T @ gate, np.eye(d), atol=atol)


def _check_targets(state: StateVector, targets) -> tuple[int, ...]:
    targets = tuple(int(t) for t in targets)
    if len(set(targets)) != len(targets):
        raise ValueError(f"duplicate target qubits {targets}")
    for t in targets:
        if not 0 <= t < state.num_qubits:
            raise ValueError(f"target qubit {t} out of range")
    return targets


def apply_unitary(state: StateVector, gate: np.ndarray, targets, *, check: bool = True) -> StateVector:
    """Apply a 2^m-dim gate to ``targets`` (gate index bit j <-> targets[j]).

    ``check=False`` skips the unitarity test for gates validated elsewhere
    (e.g. composed reflections applied inside hot loops).
    """
    targets = _check_targets(state, targets)
    gate = np.asarray(gate, dtype=np.complex128)
    if gate.shape != (1 << len(targets),) * 2:
        raise ValueError(f"gate shape {gate.shape} does not match {len(targets)} targets")
    if check and not is_unitary(gate):
        raise ValueError("gate is not unitary within 1e-10")
    out = state.copy()
    _apply_inplace(out, gate, targets)
    return out


def _apply_inplace(state: StateVector, gate: np.ndarray, targets: tuple[int, ...]) -> None:
    state.gate_count += 1
    if len(targets) == 1:
        backend.apply_1q(state.amplitudes, targets[0], gate)
    elif len(targets) == 2:
        backend.apply_2q(state.amplitudes, targets[0], targets[1], gate)
    else:
        state.amplitudes = backend.apply_general(state.amplitudes, targets, gate)


def postselect(state: StateVector, qubit: int, outcome: int) -> tuple[float, StateVector]:
    """Project ``qubit`` onto ``outcome``; returns (Born weight, normalized state).

    A branch with probability below 1e-14 yields an invalid state rather
    than raising.
    """
    (qubit,) = _check_targets(state, [qubit])
    if outcome not in (0, 1):
        raise ValueError("outcome must be 0 or 1")
    out = state.copy()
    prob = backend.project(out.amplitudes, qubit, outcome)
    if prob < ZERO_PROB:
        out.valid = False
        return prob, out
    out.amplitudes /= math.sqrt(prob)
    return prob, out


def sample_measure(state: StateVector, qubit: int, rng: Rng) -> tuple[int, StateVector]:
    (qubit,) = _check_targets(state, [qubit])
    p1 = backend.prob_one(state.amplitudes, qubit)
    outcome = 1 if rng.random() < p1 else 0
    _, out = postselect(state, qubit, outcome)
    return outcome, out


def fidelity(a: StateVector, b: StateVector) -> float:
    """|<a|b>|^2 — global phase insensitive."""
    if a.num_qubits != b.num_qubits:
        raise ValueError("states act on different register sizes")
    return float(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2)


HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
