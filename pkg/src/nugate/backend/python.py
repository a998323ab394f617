"""Pure-numpy amplitude kernels.

All kernels operate in place on a 1-D complex128 array of length 2**n.
Qubit q corresponds to bit q of the basis index (little-endian). The
compiled backend in ``_core.pyx`` implements the same signatures; keep
the two in sync.
"""
from __future__ import annotations

import numpy as np

NAME = "python"


def apply_1q(amps: np.ndarray, q: int, gate: np.ndarray) -> None:
    step = 1 << q
    n = amps.shape[0]
    base = np.arange(0, n, step << 1)
    idx0 = (base[:, None] + np.arange(step)[None, :]).ravel()
    idx1 = idx0 + step
    a = amps[idx0]
    b = amps[idx1]
    amps[idx0] = gate[0, 0] * a + gate[0, 1] * b
    amps[idx1] = gate[1, 0] * a + gate[1, 1] * b


def apply_2q(amps: np.ndarray, q0: int, q1: int, gate: np.ndarray) -> None:
    # gate index bit 0 <-> q0, bit 1 <-> q1
    n = amps.shape[0]
    m0 = 1 << q0
    m1 = 1 << q1
    idx = np.arange(n)
    base = idx[(idx & m0 == 0) & (idx & m1 == 0)]
    rows = [base, base | m0, base | m1, base | m0 | m1]
    v = np.stack([amps[r] for r in rows])
    w = gate @ v
    for i, r in enumerate(rows):
        amps[r] = w[i]


def apply_diag(amps: np.ndarray, targets: tuple[int, ...], diag: np.ndarray) -> None:
    """Multiply amplitudes by diag[sub] where sub is read from the target bits."""
    n = amps.shape[0]
    idx = np.arange(n)
    sub = np.zeros(n, dtype=np.int64)
    for j, q in enumerate(targets):
        sub |= ((idx >> q) & 1) << j
    amps *= diag[sub]


def apply_anc_rotation(
    amps: np.ndarray,
    anc: int,
    targets: tuple[int, ...],
    cos_table: np.ndarray,
    sin_table: np.ndarray,
) -> None:
    """Rotate the (anc=0, anc=1) amplitude pairs by a per-branch angle.

    The angle tables are indexed by the bits of ``targets``; the rotation is
    [[c, -s], [s, c]] on each pair, i.e. the one-ancilla embedding of a
    diagonal operator.
    """
    n = amps.shape[0]
    ma = 1 << anc
    idx = np.arange(n)
    i0 = idx[idx & ma == 0]
    sub = np.zeros(i0.shape[0], dtype=np.int64)
    for j, q in enumerate(targets):
        sub |= ((i0 >> q) & 1) << j
    c = cos_table[sub]
    s = sin_table[sub]
    a0 = amps[i0]
    a1 = amps[i0 | ma]
    amps[i0] = c * a0 - s * a1
    amps[i0 | ma] = s * a0 + c * a1


def prob_one(amps: np.ndarray, q: int) -> float:
    n = amps.shape[0]
    m = 1 << q
    idx = np.arange(n)
    sel = amps[idx & m != 0]
    return float(np.sum(sel.real**2 + sel.imag**2))


def project(amps: np.ndarray, q: int, outcome: int) -> float:
    """Zero out the non-matching branch; return the Born weight of ``outcome``."""
    n = amps.shape[0]
    m = 1 << q
    idx = np.arange(n)
    kill = idx & m == 0 if outcome == 1 else idx & m != 0
    keep = ~kill
    w = float(np.sum(amps[keep].real ** 2 + amps[keep].imag ** 2))
    amps[kill] = 0.0
    return w


def phase_flip_all_ones(amps: np.ndarray, mask: int) -> None:
    """Negate amplitudes of basis states whose bits under mask are all 1."""
    n = amps.shape[0]
    idx = np.arange(n)
    amps[idx & mask == mask] *= -1.0


def reflect_about_zero(amps: np.ndarray, mask: int) -> None:
    """Apply 2|0><0| - I on the qubits selected by mask (identity elsewhere)."""
    n = amps.shape[0]
    idx = np.arange(n)
    amps[idx & mask != 0] *= -1.0


def rus_ensemble(
    weights2: np.ndarray,
    sin2: np.ndarray,
    cos2: np.ndarray,
    n_traj: int,
    max_shots: int,
    draw,
) -> np.ndarray:
    """Sample first-flip shot counts for many repeat-until-success runs.

    weights2: (dim,) initial Born weights |<i|psi0>|^2.
    sin2/cos2: per-eigenvalue sin^2 and cos^2 of the embedding angle.
    draw: callable(count) -> uniforms for the still-active runs, one batch per
    shot in run order (both backends consume identically).

    Returns the per-run first-flip shot (0 = never flipped within max_shots).
    """
    result = np.zeros(n_traj, dtype=np.int64)
    active = np.arange(n_traj)
    w = np.tile(weights2, (n_traj, 1))
    for shot in range(1, max_shots + 1):
        u = draw(active.shape[0])
        norm = w.sum(axis=1)
        p_flip = (w * sin2).sum(axis=1) / norm
        flipped = u < p_flip
        result[active[flipped]] = shot
        active = active[~flipped]
        w = w[~flipped] * cos2
        if active.shape[0] == 0:
            break
    return result


def ite_ensemble(
    weights2: np.ndarray,
    sin2_bonds: np.ndarray,
    cos2_bonds: np.ndarray,
    n_traj: int,
    max_rounds: int,
    draw,
) -> np.ndarray:
    """Run many multi-ancilla bond-flip trajectories; diagonal fast path.

    weights2: (dim,) initial Born weights of the system register.
    sin2_bonds/cos2_bonds: (n_bonds, dim) per-basis-state sin^2 / cos^2 of
    each bond's embedding angle.
    draw: callable(count); one batch per (round, pending bond), run order,
    matching the compiled backend draw-for-draw.

    Returns the round at which every bond had flipped (0 = cap exceeded).
    """
    n_bonds = sin2_bonds.shape[0]
    result = np.zeros(n_traj, dtype=np.int64)
    active = np.arange(n_traj)
    w = np.tile(weights2, (n_traj, 1))
    pending = np.ones((n_traj, n_bonds), dtype=bool)
    for rnd in range(1, max_rounds + 1):
        for b in range(n_bonds):
            rows = np.nonzero(pending[active, b])[0]
            if rows.shape[0] == 0:
                continue
            u = draw(rows.shape[0])
            wa = w[rows]
            norm = wa.sum(axis=1)
            p_flip = (wa * sin2_bonds[b]).sum(axis=1) / norm
            flip = u < p_flip
            w[rows[flip]] = wa[flip] * sin2_bonds[b]
            w[rows[~flip]] = wa[~flip] * cos2_bonds[b]
            pending[active[rows[flip]], b] = False
        done = ~pending[active].any(axis=1)
        result[active[done]] = rnd
        keep = ~done
        active = active[keep]
        w = w[keep]
        if active.shape[0] == 0:
            break
    return result
