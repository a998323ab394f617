"""One-ancilla embedding of a diagonal nonunitary operator and the
repeat-until-success protocol.

A nonunitary M is reduced via SVD to a diagonal of singular values; the
diagonal is normalized so its largest entry is 1 and embedded into the
unitary block form [[cos(e*S), -sin(e*S)], [sin(e*S), cos(e*S)]] with one
ancilla on the highest qubit index. Measuring the ancilla in |1> heralds
the (distorted) nonunitary action; |0> applies a near-identity kickback
and the gate is reapplied until the ancilla flips.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import backend
from .rng import Rng
from .statevector import StateVector, ZeroNormError, fidelity, postselect

EMBED_ATOL = 1e-12
MAX_DEFAULT_SHOTS = 10**7


@dataclass(frozen=True)
class DiagonalSigma:
    """Non-negative singular values, normalized so max(values) == 1.

    ``norm_factor`` is the divisor that was applied; the raw operator is
    ``norm_factor * diag(values)``.
    """

    values: np.ndarray
    norm_factor: float = 1.0

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=np.float64)
        object.__setattr__(self, "values", v)
        if v.ndim != 1 or v.size == 0 or (v.size & (v.size - 1)) != 0:
            raise ValueError("singular-value list length must be a power of two")
        if np.any(v < 0):
            raise ValueError("singular values must be non-negative")
        if not math.isclose(float(v.max()), 1.0, rel_tol=0, abs_tol=1e-12):
            raise ValueError("normalized singular values must have max 1")

    @classmethod
    def from_raw(cls, raw) -> "DiagonalSigma":
        raw = np.ascontiguousarray(raw, dtype=np.float64)
        m = float(raw.max())
        if m <= 0:
            raise ValueError("cannot normalize an all-zero diagonal")
        return cls(values=raw / m, norm_factor=m)

    @property
    def dim(self) -> int:
        return self.values.size

    @property
    def num_qubits(self) -> int:
        return self.dim.bit_length() - 1


def is_idempotent(sigma: DiagonalSigma, psi0: StateVector | None = None, atol: float = 1e-10) -> bool:
    """sigma^2 == sigma, restricted to the basis support of psi0 if given."""
    v = sigma.values
    if psi0 is None:
        mask = np.ones_like(v, dtype=bool)
    else:
        mask = psi0.probabilities() > 1e-14
    return bool(np.max(np.abs(v[mask] ** 2 - v[mask]), initial=0.0) < atol)


@dataclass(frozen=True)
class EmbeddingGate:
    """Unitary embedding of a diagonal operator with one ancilla."""

    angles: np.ndarray  # epsilon * sigma_i per diagonal entry
    epsilon: float
    sigma: DiagonalSigma | None = None

    @property
    def dim(self) -> int:
        return self.angles.size

    @property
    def num_targets(self) -> int:
        return self.dim.bit_length() - 1

    def matrix(self) -> np.ndarray:
        c = np.diag(np.cos(self.angles))
        s = np.diag(np.sin(self.angles))
        return np.block([[c, -s], [s, c]]).astype(np.complex128)

    def apply(self, state: StateVector, targets, anc: int) -> None:
        """In-place strided application; ancilla pairs rotated branch-wise."""
        state.gate_count += 1
        backend.apply_anc_rotation(
            state.amplitudes, anc, tuple(targets), np.cos(self.angles), np.sin(self.angles)
        )

    def apply_inverse(self, state: StateVector, targets, anc: int) -> None:
        state.gate_count += 1
        backend.apply_anc_rotation(
            state.amplitudes, anc, tuple(targets), np.cos(self.angles), -np.sin(self.angles)
        )


def embed(sigma: DiagonalSigma, epsilon: float) -> EmbeddingGate:
    """Unitary [[cos(eS), -sin(eS)], [sin(eS), cos(eS)]], ancilla on top."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    return EmbeddingGate(angles=epsilon * sigma.values, epsilon=epsilon, sigma=sigma)


def embed_raw(values, epsilon: float) -> EmbeddingGate:
    """Embedding of an unnormalized diagonal (angles epsilon * values).

    Used where a formula is written in terms of raw eigenvalues rather than
    the max-normalized ones.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    values = np.ascontiguousarray(values, dtype=np.float64)
    return EmbeddingGate(angles=epsilon * values, epsilon=epsilon, sigma=None)


def decompose_and_normalize(M: np.ndarray) -> tuple[np.ndarray, DiagonalSigma, np.ndarray]:
    """SVD route from a general matrix to (U, normalized diagonal, V).

    Tall input is zero-padded to square first; the square is then zero-padded
    up to the next power-of-two dimension so the diagonal can be embedded.
    Reconstruction: U @ diag(values * norm_factor) @ V.conj().T equals the
    padded M.
    """
    M = np.asarray(M, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] < M.shape[1]:
        raise ValueError("matrix must be square or tall (rows >= columns)")
    if not np.any(M):
        raise ValueError("cannot decompose the zero matrix")
    n = M.shape[0]
    d = 1 << (n - 1).bit_length()
    padded = np.zeros((d, d), dtype=np.complex128)
    padded[: M.shape[0], : M.shape[1]] = M
    u, s, vh = np.linalg.svd(padded)
    return u, DiagonalSigma.from_raw(s), vh.conj().T


def target_state(sigma: DiagonalSigma, psi0: StateVector) -> StateVector:
    """sigma|psi0> normalized — the limit the protocol converges to."""
    if sigma.dim != psi0.dim:
        raise ValueError("operator and state dimensions differ")
    amps = sigma.values * psi0.amplitudes
    out = StateVector(psi0.num_qubits, amps)
    try:
        out.renormalize()
    except ZeroNormError:
        raise ZeroNormError("operator annihilates the input state; target undefined")
    return out


@dataclass
class RusTrajectory:
    """Per-shot record of one repeat-until-success run."""

    shots: int
    outcomes: list[int]
    success_shot: int | None
    cumulative_success_prob: float
    fidelity_trace: list[float]
    final_state: StateVector
    success: bool = field(init=False)

    def __post_init__(self):
        self.success = self.success_shot is not None


def default_max_shots(sigma: DiagonalSigma, psi0: StateVector, epsilon: float) -> int:
    """10x the analytic mean shot count, capped at 10^7."""
    w = psi0.probabilities()
    s2 = np.sin(epsilon * sigma.values) ** 2
    if np.any((w > 1e-14) & (s2 == 0)):
        return MAX_DEFAULT_SHOTS
    mean = float(np.sum(w / s2))
    return min(MAX_DEFAULT_SHOTS, max(1, math.ceil(10 * mean)))


def rus_run(
    psi0: StateVector,
    sigma: DiagonalSigma,
    epsilon: float,
    rng: Rng,
    max_shots: int | None = None,
) -> RusTrajectory:
    """Reapply the embedding and measure the ancilla until it flips.

    The single ancilla (highest register index) is reset to |0> between
    shots. The fidelity trace holds, per shot, the fidelity the heralded
    output would have against the normalized sigma|psi0> target.
    """
    if sigma.dim != psi0.dim:
        raise ValueError("operator and state dimensions differ")
    if max_shots is None:
        max_shots = default_max_shots(sigma, psi0, epsilon)
    if max_shots < 1:
        raise ValueError("max_shots must be at least 1")
    gate = embed(sigma, epsilon)
    target = target_state(sigma, psi0)
    anc = psi0.num_qubits
    targets = tuple(range(psi0.num_qubits))

    reg = StateVector(psi0.num_qubits + 1, np.concatenate([psi0.amplitudes, np.zeros(psi0.dim)]))
    outcomes: list[int] = []
    trace: list[float] = []
    surv = 1.0  # probability of reaching the current shot with no flip yet
    for shot in range(1, max_shots + 1):
        gate.apply(reg, targets, anc)
        p_flip, flipped = postselect(reg, anc, 1)
        out_sys = None
        if flipped.valid:
            # the ancilla-1 branch occupies the upper half of the register
            out_sys = StateVector(psi0.num_qubits, flipped.amplitudes[psi0.dim :].copy())
            trace.append(fidelity(out_sys, target))
        else:
            trace.append(0.0)
        outcome = 1 if (out_sys is not None and rng.random() < p_flip) else 0
        if out_sys is None:
            rng.random()  # keep the draw sequence aligned shot-for-shot
        outcomes.append(outcome)
        if outcome == 1:
            return RusTrajectory(
                shots=shot,
                outcomes=outcomes,
                success_shot=shot,
                cumulative_success_prob=1 - surv * (1 - p_flip),
                fidelity_trace=trace,
                final_state=out_sys,
            )
        surv *= 1 - p_flip
        _, reg = postselect(reg, anc, 0)
    system = StateVector(psi0.num_qubits, reg.amplitudes[: psi0.dim].copy())
    return RusTrajectory(
        shots=max_shots,
        outcomes=outcomes,
        success_shot=None,
        cumulative_success_prob=1 - surv,
        fidelity_trace=trace,
        final_state=system,
    )


def rus_first_flip_ensemble(
    sigma: DiagonalSigma,
    psi0: StateVector,
    epsilon: float,
    n_traj: int,
    max_shots: int,
    rng: Rng,
) -> np.ndarray:
    """First-flip shot per trajectory (0 = no flip within max_shots).

    Exploits that the conditional state stays diagonal-conjugate to psi0:
    only the per-basis Born weights evolve. Outcomes are drawn shot-major
    so both kernel backends consume the uniform stream identically.
    """
    if sigma.dim != psi0.dim:
        raise ValueError("operator and state dimensions differ")
    a = epsilon * sigma.values
    return backend.rus_ensemble(
        psi0.probabilities(),
        np.sin(a) ** 2,
        np.cos(a) ** 2,
        int(n_traj),
        int(max_shots),
        lambda count: rng.random(count),
    )


def load_sigma(path: str | Path) -> DiagonalSigma:
    """Read a diagonal preset: one non-negative real per line."""
    raw = [float(line) for line in Path(path).read_text().split()]
    return DiagonalSigma.from_raw(np.asarray(raw))


def load_matrix(path: str | Path) -> np.ndarray:
    """Read a complex matrix from JSON: array of rows of [re, im] pairs."""
    rows = json.loads(Path(path).read_text())
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=np.complex128)


__all__ = [
    "DiagonalSigma",
    "EmbeddingGate",
    "RusTrajectory",
    "decompose_and_normalize",
    "default_max_shots",
    "embed",
    "embed_raw",
    "is_idempotent",
    "load_matrix",
    "load_sigma",
    "rus_first_flip_ensemble",
    "rus_run",
    "target_state",
]
