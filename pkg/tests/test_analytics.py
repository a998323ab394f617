"""Closed-form probability/fidelity trade-off analytics."""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nugate.embedding import DiagonalSigma
from nugate.statevector import init_basis_state, uniform_superposition
from nugate.tradeoff import (
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

HALFGAP = DiagonalSigma.from_raw(np.array([1.0, 0.5]))
PLUS = uniform_superposition(1)


def _query(eta=0.01, epsilon=0.1, sigma=HALFGAP, psi0=PLUS):
    return TradeoffQuery(sigma=sigma, psi0=psi0, eta=eta, epsilon=epsilon)


# ------------------------------------------------------------ frozen values


def test_threshold_shots_frozen_values():
    assert threshold_shots(_query(epsilon=0.1)) == 94
    assert threshold_shots(_query(epsilon=0.05)) == 377


def test_shape_factor_exact_fraction():
    # m2 = 0.625, m4 = 0.53125, m6 = 0.5078125 for diag(1, 1/2) under |+>
    m = moments(HALFGAP, PLUS)
    assert abs(m.curvature - (m.m6 * m.m2 - m.m4**2)) == 0
    assert abs(shape_factor(HALFGAP, PLUS) - 10 / 3) < 1e-12


def test_limiting_success_frozen_value():
    assert abs(limiting_success(HALFGAP, PLUS, 0.01) - 0.41022602841071831) < 1e-14


def test_mean_shots_frozen_value():
    direct = 0.5 / math.sin(0.1) ** 2 + 0.5 / math.sin(0.05) ** 2
    got = mean_shots(HALFGAP, PLUS, 0.1)
    assert abs(got - direct) < 1e-10
    assert abs(got - 250.33375056292255) < 1e-9


# -------------------------------------------------------------- consistency


def test_shot_prob_sums_to_cumulative():
    q = _query(epsilon=0.3)
    n_star = threshold_shots(q)
    total = sum(shot_prob(q, n) for n in range(1, n_star + 1))
    assert abs(total - cumulative_success(q)) < 1e-12


def test_shot_prob_is_a_probability_distribution():
    q = _query(epsilon=0.4)
    total = sum(shot_prob(q, n) for n in range(1, 5000))
    assert total <= 1 + 1e-12
    # the tail vanishes because both eigenvalues have nonzero flip amplitude
    assert total > 1 - 1e-10


def test_fidelity_exact_vs_series_small_epsilon():
    """Series remainder shrinks like eps^6 at fixed shot count."""
    n = 5
    errs = []
    for eps in (0.4, 0.2, 0.1):
        q = _query(epsilon=eps)
        errs.append(abs(fidelity_after(q, n, "exact") - fidelity_after(q, n, "series")))
    assert errs[1] < errs[0] / 32  # halving eps shrinks the gap ~64x
    assert errs[2] < errs[1] / 32


def test_fidelity_at_first_shot_epsilon_to_zero():
    for eps in (0.3, 0.1, 0.03):
        q = _query(epsilon=eps)
        assert fidelity_after(q, 1) <= 1 + 1e-12
    assert abs(fidelity_after(_query(epsilon=1e-3), 1) - 1) < 1e-9


def test_threshold_is_the_fidelity_crossing():
    """n* brackets the point where the series fidelity hits (approximately) 1-2eta."""
    q = _query(eta=0.01, epsilon=0.05)
    n_star = threshold_shots(q)
    floor = 1 - 2 * q.eta
    # generous slack: the closed form drops the -1/3 offset and the floor()
    assert fidelity_after(q, n_star, "series") >= floor - 1e-4
    assert fidelity_after(q, n_star + 3, "series") < floor + 1e-4


def test_threshold_refined_is_conservative():
    """The cubic correction lowers the budget and keeps fidelity above floor."""
    q = _query(eta=0.01, epsilon=0.02)
    plain = threshold_shots(q)
    refined = threshold_shots(q, refine_cubic=True)
    floor = (1 - q.eta) ** 2
    assert refined < plain
    assert fidelity_after(q, refined) >= floor
    crossing = next(n for n in range(1, 20000) if fidelity_after(q, n) < floor) - 1
    assert abs(refined - crossing) <= 0.2 * crossing
    assert abs(plain - crossing) <= 0.2 * crossing


def test_cumulative_converges_to_limit():
    vals = [cumulative_success(_query(epsilon=e)) for e in (0.1, 0.05, 0.02, 0.01, 0.005)]
    lim = limiting_success(HALFGAP, PLUS, 0.01)
    gaps = [abs(v - lim) for v in vals]
    assert gaps[-1] < 1e-3
    assert gaps[-1] < gaps[0]


def test_cos_power_limit_identity():
    """cos^{2n}(eps*s) -> exp(-n eps^2 s^2): the mechanism behind the limit."""
    eps, n = 0.01, 20000
    s = 0.7
    assert abs(math.cos(eps * s) ** (2 * n) - math.exp(-n * eps**2 * s**2)) < 1e-3


# --------------------------------------------------------------- idempotent


def test_idempotent_unbounded_and_projection_limit():
    proj = DiagonalSigma.from_raw(np.array([1.0, 0.0]))
    with pytest.raises(UnboundedShots):
        threshold_shots(_query(sigma=proj))
    with pytest.raises(UnboundedShots):
        shape_factor(proj, PLUS)
    detail = limiting_success_detail(proj, PLUS, 0.01)
    assert detail.idempotent
    assert abs(detail.value - 0.5) < 1e-14  # <Sigma^2> under |+>
    # cumulative success with an unbounded budget: everything that can flip does
    assert abs(cumulative_success(_query(sigma=proj, epsilon=0.3)) - 0.5) < 1e-14


def test_idempotent_fidelity_is_one_at_any_shot():
    proj = DiagonalSigma.from_raw(np.array([1.0, 0.0]))
    q = _query(sigma=proj, epsilon=0.4, eta=0.3)
    for n in (1, 5, 50):
        assert abs(fidelity_after(q, n) - 1) < 1e-12


def test_mean_shots_infinite_on_annihilated_support():
    proj = DiagonalSigma.from_raw(np.array([1.0, 0.0]))
    assert mean_shots(proj, PLUS, 0.2) == math.inf
    assert mean_shots(proj, init_basis_state(1, 0), 0.2) < math.inf


# ----------------------------------------------------------------- property


@settings(max_examples=250, deadline=None)
@given(
    st.lists(st.floats(min_value=1e-3, max_value=1.0), min_size=2, max_size=8),
    st.integers(min_value=0, max_value=10**9),
)
def test_cauchy_inequality_curvature_nonnegative(vals, wseed):
    """m6*m2 >= m4^2 for any spectrum and any state (Cauchy-Schwarz)."""
    dim = 1 << (len(vals) - 1).bit_length()
    vals = (vals + [0.0] * dim)[:dim]
    sigma = DiagonalSigma.from_raw(np.array(vals) / max(vals))
    w = np.random.default_rng(wseed).random(dim) + 1e-9
    psi = np.sqrt(w / w.sum()).astype(complex)
    m = moments(sigma, init_basis_state(1, 0).__class__(sigma.num_qubits, psi))
    assert m.curvature >= -1e-15


def test_cauchy_equality_iff_two_point_degenerate():
    # single distinct nonzero eigenvalue: equality holds exactly
    sigma = DiagonalSigma.from_raw(np.array([1.0, 1.0]))
    assert abs(moments(sigma, PLUS).curvature) < 1e-15
    assert moments(HALFGAP, PLUS).curvature > 1e-4


def test_moment_set_curvature_formula():
    m = MomentSet(m2=0.5, m4=0.3, m6=0.2, m8=0.15)
    assert m.curvature == 0.2 * 0.5 - 0.09


# --------------------------------------------------------------- multi-gate


def test_multi_threshold_shots():
    assert multi_threshold_shots(0.01, 0.05) == math.floor(math.sqrt(0.08) / 0.0025)
    assert multi_threshold_shots(0.9999, 10.0) == 1  # never below one shot


def test_multi_gate_single_equals_direct_expectation():
    eta, eps = 0.01, 0.1
    n_star = multi_threshold_shots(eta, eps)
    got = multi_gate_cumulative([(HALFGAP, (0,))], PLUS, eta, eps)
    expected = 1 - 0.5 * (math.cos(eps) ** (2 * n_star) + math.cos(eps * 0.5) ** (2 * n_star))
    assert abs(got - expected) < 1e-14


def test_multi_gate_disjoint_product_factorizes():
    eta, eps = 0.05, 0.2
    psi = uniform_superposition(2)
    single = multi_gate_cumulative([(HALFGAP, (0,))], PLUS, eta, eps)
    both = multi_gate_cumulative([(HALFGAP, (0,)), (HALFGAP, (1,))], psi, eta, eps)
    assert abs(both - single**2) < 1e-14


def test_multi_gate_validation():
    with pytest.raises(ValueError):
        multi_gate_cumulative([(HALFGAP, (0, 1))], uniform_superposition(2), 0.01, 0.1)
    with pytest.raises(ValueError):
        multi_gate_cumulative([(HALFGAP, (5,))], uniform_superposition(2), 0.01, 0.1)


# ---------------------------------------------------------------- query API


def test_query_validation():
    with pytest.raises(ValueError):
        _query(eta=0.0)
    with pytest.raises(ValueError):
        _query(eta=1.0)
    with pytest.raises(ValueError):
        _query(epsilon=0.0)
    with pytest.raises(ValueError):
        TradeoffQuery(sigma=HALFGAP, psi0=uniform_superposition(2), eta=0.1, epsilon=0.1)
    with pytest.raises(ValueError):
        shot_prob(_query(), 0)
    with pytest.raises(ValueError):
        fidelity_after(_query(), 2, mode="bogus")
