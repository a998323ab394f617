"""Random +/-1 Ising chains and their imaginary-time evolution.

Sign convention: H = -sum_i J_i sz_i sz_{i+1}. H is classical (diagonal),
so the exact evolved state — the reference oracle for every fidelity in
this package — is an elementwise reweighting of the amplitudes, and the
ground subspace is found by enumeration.

The heralded-gate protocol realizes each bond factor exp(J sz sz tau) as a
one-ancilla embedded gate; one ancilla per bond, measured every round
without reset, and a bond's gate is skipped once its ancilla has flipped.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import backend
from .embedding import DiagonalSigma, embed
from .rng import Rng
from .statevector import StateVector, ZeroNormError, fidelity, postselect, uniform_superposition
from .tradeoff import multi_threshold_shots


@dataclass(frozen=True)
class IsingChain:
    sites: int
    couplings: tuple[int, ...]

    def __post_init__(self):
        if self.sites < 2:
            raise ValueError("chain needs at least two sites")
        object.__setattr__(self, "couplings", tuple(int(j) for j in self.couplings))
        if len(self.couplings) != self.sites - 1:
            raise ValueError("need exactly sites-1 couplings")
        if any(j not in (1, -1) for j in self.couplings):
            raise ValueError("couplings must be +1 or -1")

    @property
    def bonds(self) -> int:
        return self.sites - 1


def random_chain(sites: int, rng: Rng) -> IsingChain:
    if sites < 2:
        raise ValueError("chain needs at least two sites")
    return IsingChain(sites=sites, couplings=tuple(rng.choice_sign(size=sites - 1).tolist()))


@dataclass(frozen=True)
class BondSigma:
    """Diagonal of one bond factor exp(J sz sz tau) on qubit pair (i, i+1).

    Diagonal index bit 0 is the left qubit. Normalized form divides by the
    largest eigenvalue exp(|J| tau).
    """

    J: int
    tau: float
    normalized: bool
    values: np.ndarray

    def as_sigma(self) -> DiagonalSigma:
        if not self.normalized:
            return DiagonalSigma.from_raw(self.values)
        return DiagonalSigma(values=self.values, norm_factor=math.exp(abs(self.J) * self.tau))


def bond_sigma(J: int, tau: float, normalized: bool = True) -> BondSigma:
    if J not in (1, -1):
        raise ValueError("J must be +1 or -1")
    if tau < 0:
        raise ValueError("tau must be non-negative")
    # sz*sz eigenvalue +1 on aligned pairs (00, 11), -1 on anti-aligned
    aligned = math.exp(J * tau)
    anti = math.exp(-J * tau)
    values = np.array([aligned, anti, anti, aligned])
    if normalized:
        values = values / math.exp(abs(J) * tau)
    return BondSigma(J=J, tau=tau, normalized=normalized, values=values)


def bond_energies(chain: IsingChain) -> np.ndarray:
    """E(b) = -sum_i J_i s_i s_{i+1} for every computational bitstring."""
    dim = 1 << chain.sites
    idx = np.arange(dim)
    energy = np.zeros(dim)
    for i, J in enumerate(chain.couplings):
        s_i = 1 - 2 * ((idx >> i) & 1)
        s_j = 1 - 2 * ((idx >> (i + 1)) & 1)
        energy -= J * s_i * s_j
    return energy


def exact_ite(chain: IsingChain, tau: float, psi0: StateVector) -> StateVector:
    """Multiply amplitudes by exp(-E(b) tau) and renormalize (exact oracle)."""
    if psi0.dim != 1 << chain.sites:
        raise ValueError("state dimension does not match the chain")
    if tau < 0:
        raise ValueError("tau must be non-negative")
    energy = bond_energies(chain)
    weights = np.exp(-(energy - energy.min()) * tau)
    out = StateVector(psi0.num_qubits, psi0.amplitudes * weights)
    try:
        out.renormalize()
    except ZeroNormError:
        raise ZeroNormError("imaginary-time filter annihilated the state")
    return out


def ground_subspace(chain: IsingChain) -> tuple[float, frozenset[int]]:
    """Exact minimum energy and the complete set of minimizing bitstrings."""
    if chain.sites > 24:
        raise ValueError("enumeration capped at 24 sites")
    energy = bond_energies(chain)
    e0 = float(energy.min())
    basis = frozenset(int(b) for b in np.nonzero(energy == e0)[0])
    return e0, basis


def ground_fidelity(state: StateVector, chain: IsingChain) -> float:
    """Overlap weight with the projector onto the ground subspace."""
    _, basis = ground_subspace(chain)
    probs = state.probabilities()
    return float(sum(probs[b] for b in basis))


@dataclass
class IteRunReport:
    success: bool
    rounds: int
    round_cap: int
    flip_round: list[int]  # per bond; 0 = never flipped
    round_bitstrings: list[str]  # per round, '1' where the ancilla has flipped
    fidelity_ite: float
    final_state: StateVector = field(repr=False)

    def to_json(self) -> dict:
        return {
            "success": self.success,
            "rounds": self.rounds,
            "round_cap": self.round_cap,
            "flip_round": list(self.flip_round),
            "round_bitstrings": list(self.round_bitstrings),
            "fidelity_ite": self.fidelity_ite,
        }


def ite_rus_protocol(
    chain: IsingChain,
    tau: float,
    epsilon: float,
    eta: float,
    rng: Rng,
    round_cap: int | None = None,
) -> IteRunReport:
    """Full-register run: |+>^L input, one ancilla per bond on the high indices.

    Each round applies every pending bond's embedded gate and measures its
    ancilla (gate-then-measure per bond; all generators commute, so this is
    distributionally identical to measuring the whole ancilla register at
    the end of the round). Flipped ancillas stay |1> and their gate is
    skipped. Stops when all bonds have flipped or the shot budget derived
    from (eta, epsilon) runs out.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if round_cap is None:
        round_cap = multi_threshold_shots(eta, epsilon)
    L = chain.sites
    n_bonds = chain.bonds
    num_qubits = L + n_bonds
    psi0 = uniform_superposition(L)
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[: 1 << L] = psi0.amplitudes
    reg = StateVector(num_qubits, amps)

    gates = [embed(bond_sigma(J, tau).as_sigma(), epsilon) for J in chain.couplings]
    flip_round = [0] * n_bonds
    bitstrings: list[str] = []
    rounds = 0
    for rnd in range(1, round_cap + 1):
        rounds = rnd
        for b in range(n_bonds):
            if flip_round[b]:
                continue
            anc = L + b
            gates[b].apply(reg, (b, b + 1), anc)
            p1 = backend.prob_one(reg.amplitudes, anc)
            outcome = 1 if rng.random() < p1 else 0
            _, reg = postselect(reg, anc, outcome)
            if outcome == 1:
                flip_round[b] = rnd
        bitstrings.append("".join("1" if flip_round[b] else "0" for b in range(n_bonds)))
        if all(flip_round):
            break
    success = all(f > 0 for f in flip_round)

    # strip the (now product-state) ancillas to read the system register;
    # the surviving block sits at the offset set by the flipped-ancilla bits
    offset = 0
    for b in range(n_bonds):
        outcome = 1 if flip_round[b] else 0
        _, reg = postselect(reg, L + b, outcome)
        offset |= outcome << (L + b)
    system = StateVector(L, reg.amplitudes[offset : offset + (1 << L)].copy())
    fid = fidelity(system, exact_ite(chain, tau, psi0))
    return IteRunReport(
        success=success,
        rounds=rounds,
        round_cap=round_cap,
        flip_round=flip_round,
        round_bitstrings=bitstrings,
        fidelity_ite=fid,
        final_state=system,
    )


def bond_tables(chain: IsingChain, tau: float, epsilon: float) -> tuple[np.ndarray, np.ndarray]:
    """(n_bonds, 2^L) sin^2 / cos^2 of the embedding angle per basis state."""
    L = chain.sites
    dim = 1 << L
    idx = np.arange(dim)
    sin2 = np.empty((chain.bonds, dim))
    cos2 = np.empty((chain.bonds, dim))
    for b, J in enumerate(chain.couplings):
        sigma = bond_sigma(J, tau).as_sigma()
        sub = ((idx >> b) & 1) | (((idx >> (b + 1)) & 1) << 1)
        a = epsilon * sigma.values[sub]
        sin2[b] = np.sin(a) ** 2
        cos2[b] = np.cos(a) ** 2
    return sin2, cos2


def ite_success_ensemble(
    chain: IsingChain,
    tau: float,
    epsilon: float,
    eta: float,
    n_traj: int,
    rng: Rng,
    round_cap: int | None = None,
) -> np.ndarray:
    """Per-trajectory round of completion (0 = failed within the cap).

    Diagonal fast path over system Born weights only; draw-for-draw
    equivalent to ``ite_rus_protocol`` (same uniforms, same outcomes).
    """
    if round_cap is None:
        round_cap = multi_threshold_shots(eta, epsilon)
    psi0 = uniform_superposition(chain.sites)
    sin2, cos2 = bond_tables(chain, tau, epsilon)
    return backend.ite_ensemble(
        psi0.probabilities(),
        sin2,
        cos2,
        int(n_traj),
        int(round_cap),
        lambda count: rng.random(count),
    )
