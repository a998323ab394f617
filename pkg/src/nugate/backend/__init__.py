"""Kernel backend selection.

The compiled extension (``nugate.backend._core``) is preferred; the numpy
implementation in ``python.py`` is the fallback. Set ``NUGATE_BACKEND=python``
to force the fallback (used by the equivalence tests and the benchmark).
"""
from __future__ import annotations

import os

import numpy as np

from . import python as _py

if os.environ.get("NUGATE_BACKEND", "").lower() == "python":
    _impl = _py
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _py

NAME: str = _impl.NAME

apply_1q = _impl.apply_1q
apply_2q = _impl.apply_2q
apply_diag = _impl.apply_diag
apply_anc_rotation = _impl.apply_anc_rotation
prob_one = _impl.prob_one
project = _impl.project
phase_flip_all_ones = _impl.phase_flip_all_ones
reflect_about_zero = _impl.reflect_about_zero
rus_ensemble = _impl.rus_ensemble
ite_ensemble = _impl.ite_ensemble


def apply_general(amps: np.ndarray, targets: tuple[int, ...], gate: np.ndarray) -> np.ndarray:
    """Apply a 2^m x 2^m gate to an arbitrary target subset (numpy path).

    Gate index bit j corresponds to targets[j]. Returns the updated array
    (may be a new array); callers should rebind.
    """
    n = amps.shape[0]
    num_qubits = n.bit_length() - 1
    m = len(targets)
    # view as an n-dim tensor; axis k of the tensor is qubit (num_qubits-1-k)
    tensor = amps.reshape([2] * num_qubits)
    axes = [num_qubits - 1 - q for q in targets]
    tensor = np.moveaxis(tensor, axes, range(m))
    shape = tensor.shape
    flat = tensor.reshape(2**m, -1)
    # tensor axis order after moveaxis is targets[0], targets[1], ... but a
    # flattened index over those axes has targets[0] as the most significant
    # bit; the gate convention is targets[0] = least significant. Reorder.
    perm = _bit_reverse_perm(m)
    flat = flat[perm]
    flat = gate @ flat
    flat = flat[np.argsort(perm)]
    tensor = flat.reshape(shape)
    tensor = np.moveaxis(tensor, range(m), axes)
    return np.ascontiguousarray(tensor.reshape(n))


def _bit_reverse_perm(m: int) -> np.ndarray:
    idx = np.arange(2**m)
    out = np.zeros_like(idx)
    for j in range(m):
        out |= ((idx >> j) & 1) << (m - 1 - j)
    return out
