"""Minimal gate-sequence container.

Reflections about prepared-but-unknown states are realized by conjugating
a reflection about |0...0> with the preparation circuit, so circuits need
exact inverses; every supported op either is self-inverse or has one.
"""
from __future__ import annotations

import numpy as np

from . import backend
from .embedding import EmbeddingGate
from .statevector import HADAMARD, PAULI_X, StateVector, _apply_inplace


class Circuit:
    def __init__(self, ops: list | None = None):
        self.ops: list[tuple] = ops if ops is not None else []

    def gate(self, matrix: np.ndarray, targets) -> "Circuit":
        self.ops.append(("gate", np.asarray(matrix, dtype=np.complex128), tuple(targets)))
        return self

    def h(self, q: int) -> "Circuit":
        return self.gate(HADAMARD, (q,))

    def x(self, q: int) -> "Circuit":
        return self.gate(PAULI_X, (q,))

    def embed(self, gate: EmbeddingGate, targets, anc: int) -> "Circuit":
        self.ops.append(("embed", gate, tuple(targets), anc))
        return self

    def reflect_zero(self, mask: int) -> "Circuit":
        """2|0><0| - I on the qubits selected by mask."""
        self.ops.append(("reflect0", mask))
        return self

    def phase_ones(self, mask: int) -> "Circuit":
        """Negate amplitudes whose bits under mask are all 1."""
        self.ops.append(("phase_ones", mask))
        return self

    def extend(self, other: "Circuit") -> "Circuit":
        self.ops.extend(other.ops)
        return self

    def apply(self, state: StateVector) -> None:
        for op in self.ops:
            _run(state, op, inverse=False)

    def apply_inverse(self, state: StateVector) -> None:
        for op in reversed(self.ops):
            _run(state, op, inverse=True)


def _run(state: StateVector, op: tuple, inverse: bool) -> None:
    kind = op[0]
    if kind == "gate":
        _, m, targets = op
        _apply_inplace(state, m.conj().T if inverse else m, targets)
    elif kind == "embed":
        _, gate, targets, anc = op
        if inverse:
            gate.apply_inverse(state, targets, anc)
        else:
            gate.apply(state, targets, anc)
    elif kind == "reflect0":
        state.gate_count += 1
        backend.reflect_about_zero(state.amplitudes, op[1])
    elif kind == "phase_ones":
        state.gate_count += 1
        backend.phase_flip_all_ones(state.amplitudes, op[1])
    else:  # pragma: no cover
        raise ValueError(f"unknown op {kind!r}")


def preparation_gate(psi0: StateVector) -> np.ndarray:
    """A unitary whose first column is psi0 (maps |0..0> to psi0)."""
    n = psi0.dim
    cols = [psi0.amplitudes.astype(np.complex128)]
    for j in range(n):
        if len(cols) == n:
            break
        v = np.zeros(n, dtype=np.complex128)
        v[j] = 1.0
        for c in cols:
            v -= np.vdot(c, v) * c
        nrm = np.linalg.norm(v)
        if nrm > 1e-8:
            cols.append(v / nrm)
    return np.column_stack(cols)
