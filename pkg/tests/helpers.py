"""Independent reference implementations used as oracles by the tests.

Everything here is deliberately naive (dense matrices, explicit loops) so
that agreement with the package is evidence, not tautology.
"""
from __future__ import annotations

import numpy as np


def dense_apply(amps: np.ndarray, targets: tuple[int, ...], gate: np.ndarray) -> np.ndarray:
    """Apply a 2^m gate to target qubits by explicit index arithmetic.

    Convention under test: gate index bit j corresponds to targets[j];
    qubit q is bit q of the basis index.
    """
    n = amps.shape[0]
    m = len(targets)
    out = np.zeros_like(amps)
    for i in range(n):
        sub_i = 0
        for j, q in enumerate(targets):
            sub_i |= ((i >> q) & 1) << j
        base = i
        for q in targets:
            base &= ~(1 << q)
        for sub_o in range(1 << m):
            o = base
            for j, q in enumerate(targets):
                o |= ((sub_o >> j) & 1) << q
            out[o] += gate[sub_o, sub_i] * amps[i]
    return out


def dense_ising_hamiltonian(couplings: tuple[int, ...]) -> np.ndarray:
    """Diagonal of H = -sum_i J_i s_i s_{i+1} over all bitstrings (s = +/-1)."""
    sites = len(couplings) + 1
    dim = 1 << sites
    diag = np.zeros(dim)
    for b in range(dim):
        e = 0.0
        for i, J in enumerate(couplings):
            s_i = 1 - 2 * ((b >> i) & 1)
            s_j = 1 - 2 * ((b >> (i + 1)) & 1)
            e -= J * s_i * s_j
        diag[b] = e
    return diag


def random_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))
