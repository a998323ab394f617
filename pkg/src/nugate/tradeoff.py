"""Closed-form probability/fidelity trade-off for the heralded gate.

Everything here is an expectation of a scalar function of the diagonal
singular values under the Born weights of the input state, so operator
functions are evaluated eigenvalue-wise throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .embedding import DiagonalSigma, is_idempotent
from .statevector import StateVector

IDEMPOTENT_ATOL = 1e-10
DEGENERATE_DENOM = 1e-14


@dataclass(frozen=True)
class MomentSet:
    """<sigma^k> for k = 2, 4, 6, 8 under the input state's Born weights."""

    m2: float
    m4: float
    m6: float
    m8: float

    @property
    def curvature(self) -> float:
        """m6*m2 - m4^2; zero exactly for idempotent diagonals (Cauchy)."""
        return self.m6 * self.m2 - self.m4**2


@dataclass(frozen=True)
class TradeoffQuery:
    """Fidelity floor (1-eta)^2 and rotation scale epsilon for one operator."""

    sigma: DiagonalSigma
    psi0: StateVector
    eta: float
    epsilon: float

    def __post_init__(self):
        if not 0 < self.eta < 1:
            raise ValueError("eta must lie in (0, 1)")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.sigma.dim != self.psi0.dim:
            raise ValueError("operator and state dimensions differ")


def _weights(psi0: StateVector) -> np.ndarray:
    return psi0.probabilities()


def moments(sigma: DiagonalSigma, psi0: StateVector) -> MomentSet:
    w = _weights(psi0)
    v = sigma.values
    return MomentSet(*(float(np.sum(w * v**k)) for k in (2, 4, 6, 8)))


def expect(sigma: DiagonalSigma, psi0: StateVector, fn) -> float:
    """<psi0| fn(sigma) |psi0> for an eigenvalue-wise fn."""
    return float(np.sum(_weights(psi0) * fn(sigma.values)))


def shot_prob(q: TradeoffQuery, n: int) -> float:
    """Probability that the ancilla first flips exactly at shot n."""
    if n < 1:
        raise ValueError("shot index starts at 1")
    a = q.epsilon * q.sigma.values
    return float(np.sum(_weights(q.psi0) * np.sin(a) ** 2 * np.cos(a) ** (2 * n - 2)))


def fidelity_after(q: TradeoffQuery, n: int, mode: str = "exact") -> float:
    """Fidelity of the shot-n heralded output against the nonunitary target.

    "exact" evaluates the closed quotient; "series" uses the fourth-order
    expansion 1 - curvature/m2^2 * (n/2 - 1/3)^2 * eps^4.
    """
    if n < 1:
        raise ValueError("shot index starts at 1")
    v = q.sigma.values
    w = _weights(q.psi0)
    if mode == "series":
        m = moments(q.sigma, q.psi0)
        return 1.0 - (m.curvature / m.m2**2) * (n / 2 - 1 / 3) ** 2 * q.epsilon**4
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    a = q.epsilon * v
    g = np.sin(a) * np.cos(a) ** (n - 1)
    num = float(np.sum(w * v * g)) ** 2
    den = float(np.sum(w * g**2)) * float(np.sum(w * v**2))
    if den < DEGENERATE_DENOM:
        raise ValueError("heralded branch has vanishing weight at this shot")
    return num / den


class UnboundedShots(ValueError):
    """Idempotent diagonals never degrade fidelity: no finite threshold."""


def threshold_shots(q: TradeoffQuery, refine_cubic: bool = False) -> int:
    """Largest shot count keeping fidelity above (1-eta)^2.

    Leading root floor(sqrt(8*eta*m2^2/curvature)/eps^2); ``refine_cubic``
    keeps the next correction term and solves the cubic in n*eps^2.
    """
    m = moments(q.sigma, q.psi0)
    if is_idempotent(q.sigma, q.psi0, IDEMPOTENT_ATOL) or m.curvature <= DEGENERATE_DENOM:
        raise UnboundedShots("idempotent operator: fidelity never drops below 1")
    if not refine_cubic:
        return math.floor(math.sqrt(8 * q.eta * m.m2**2 / m.curvature) / q.epsilon**2)
    # (c2/4) x^2 + (c3/8) x^3 = 2 eta, x = n eps^2, c3 from the eps^6 term
    c2 = m.curvature / m.m2**2
    c3 = (m.m8 * m.m2 - m.m6 * m.m4) / m.m2**2
    x0 = math.sqrt(8 * q.eta / c2)

    def res(x):
        return c2 * x**2 / 4 + c3 * x**3 / 8 - 2 * q.eta

    hi = x0
    lo = x0
    while res(hi) < 0:
        hi *= 2
    while res(lo) > 0:
        lo /= 2
    x = brentq(res, lo, hi, xtol=1e-15, rtol=1e-14)
    return math.floor(x / q.epsilon**2)


def cumulative_success(q: TradeoffQuery) -> float:
    """Success probability within the fidelity-threshold shot budget."""
    a = q.epsilon * q.sigma.values
    try:
        n_star = threshold_shots(q)
    except UnboundedShots:
        # n -> infinity limit: cos^(2n) survives only where the flip
        # amplitude sin(eps*sigma) is exactly zero
        limit = np.where(np.sin(a) ** 2 < 1e-30, 1.0, 0.0)
        return 1.0 - float(np.sum(_weights(q.psi0) * limit))
    return 1.0 - float(np.sum(_weights(q.psi0) * np.cos(a) ** (2 * n_star)))


def shape_factor(sigma: DiagonalSigma, psi0: StateVector) -> float:
    """sqrt(m2^2 / curvature) — spectral-shape constant of the eps->0 limit."""
    m = moments(sigma, psi0)
    if m.curvature <= DEGENERATE_DENOM:
        raise UnboundedShots("idempotent operator: limit constant undefined")
    return math.sqrt(m.m2**2 / m.curvature)


@dataclass(frozen=True)
class LimitResult:
    value: float
    idempotent: bool


def limiting_success_detail(sigma: DiagonalSigma, psi0: StateVector, eta: float) -> LimitResult:
    """eps->0 limit of the thresholded success probability.

    Idempotent operators hit the projection limit <sigma^2> instead and are
    flagged.
    """
    if not 0 < eta < 1:
        raise ValueError("eta must lie in (0, 1)")
    w = _weights(psi0)
    v = sigma.values
    if is_idempotent(sigma, psi0, IDEMPOTENT_ATOL):
        return LimitResult(value=float(np.sum(w * v**2)), idempotent=True)
    f = shape_factor(sigma, psi0)
    val = 1.0 - float(np.sum(w * np.exp(-math.sqrt(8 * eta) * f * v**2)))
    return LimitResult(value=val, idempotent=False)


def limiting_success(sigma: DiagonalSigma, psi0: StateVector, eta: float) -> float:
    return limiting_success_detail(sigma, psi0, eta).value


def mean_shots(sigma: DiagonalSigma, psi0: StateVector, epsilon: float) -> float:
    """Expected shots to the first flip; inf if psi0 weights a zero eigenvalue."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    w = _weights(psi0)
    s2 = np.sin(epsilon * sigma.values) ** 2
    if np.any((w > 1e-14) & (s2 == 0)):
        return math.inf
    mask = w > 0
    return float(np.sum(w[mask] / s2[mask]))


def multi_threshold_shots(eta: float, epsilon: float) -> int:
    """Shared shot budget for a layer of commuting diagonal gates.

    Uses the uniform leading-order constant sqrt(8*eta)/eps^2 (the
    spectral-shape factor is operator-dependent and dropped at this order).
    """
    return max(1, math.floor(math.sqrt(8 * eta) / epsilon**2))


def multi_gate_cumulative(
    placed_sigmas: list[tuple[DiagonalSigma, tuple[int, ...]]],
    psi0: StateVector,
    eta: float,
    epsilon: float,
) -> float:
    """<psi0| prod_i (1 - cos^(2n*)(eps*S_i)) |psi0> over placed diagonals.

    Every operator must be diagonal in the computational basis of its stated
    qubits (they then all commute and the product form is exact).
    """
    if not 0 < eta < 1:
        raise ValueError("eta must lie in (0, 1)")
    n_star = multi_threshold_shots(eta, epsilon)
    w = _weights(psi0)
    dim = psi0.dim
    idx = np.arange(dim)
    acc = np.ones(dim)
    for sigma, qubits in placed_sigmas:
        qubits = tuple(int(t) for t in qubits)
        if sigma.dim != 1 << len(qubits):
            raise ValueError(
                f"operator of dim {sigma.dim} cannot act on qubits {qubits}"
            )
        for t in qubits:
            if not 0 <= t < psi0.num_qubits:
                raise ValueError(f"qubit {t} out of range")
        sub = np.zeros(dim, dtype=np.int64)
        for j, t in enumerate(qubits):
            sub |= ((idx >> t) & 1) << j
        lam = sigma.values[sub]
        acc *= 1.0 - np.cos(epsilon * lam) ** (2 * n_star)
    return float(np.sum(w * acc))
