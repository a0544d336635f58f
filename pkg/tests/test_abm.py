import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import abm_reference, riccati, rk4, trapezoid_pece

from fracivp import (
    RICCATI,
    AbmConfig,
    FractionalIVP,
    PolynomialRHS,
    SolverOverflowError,
    Trajectory,
    a_weight,
    b_weight,
    corrector_step,
    predictor,
    solve_pece,
)
from fracivp.abm import a_weights, b_weights

ALPHAS = [0.3, 0.7, 1.0]
ONE = PolynomialRHS((1.0,))
ZERO = PolynomialRHS((0.0,))


def test_b_weight_examples():
    assert b_weight(3, 7, 1.0, 0.25) == pytest.approx(0.25, rel=1e-15)
    for alpha in ALPHAS:
        assert b_weight(4, 5, alpha, 0.1) == pytest.approx(0.1**alpha / alpha, rel=1e-15)
    # mpmath at 40 digits: (0.01**0.7 / 0.7) * (2**0.7 - 1)
    assert b_weight(0, 2, 0.7, 0.01) == pytest.approx(0.03551711943198002, rel=1e-13)


def test_a_weight_examples():
    h = 0.05
    for alpha in ALPHAS:
        assert a_weight(6, 6, alpha, h) == pytest.approx(h**alpha / (alpha * (alpha + 1)), rel=1e-15)
    k = 6
    assert a_weight(0, k, 1.0, h) == pytest.approx(h / 2, rel=1e-14)
    assert a_weight(k, k, 1.0, h) == pytest.approx(h / 2, rel=1e-14)
    for j in range(1, k):
        assert a_weight(j, k, 1.0, h) == pytest.approx(h, rel=1e-14)


@pytest.mark.parametrize("alpha", [0.05, 0.3, 0.7, 0.99])
def test_weights_match_high_precision(alpha):
    mpmath = pytest.importorskip("mpmath")
    mpmath.mp.dps = 40
    a = mpmath.mpf(alpha)
    p = a + 1
    for k in (1, 2, 7, 100, 1000):
        for j in sorted({0, min(1, k - 1), k // 2, k - 1}):
            exact_b = (mpmath.mpf(k - j) ** a - mpmath.mpf(k - 1 - j) ** a) / a
            assert b_weight(j, k, alpha, 1.0) == pytest.approx(float(exact_b), rel=1e-13)
            if j == 0:
                exact_a = mpmath.mpf(k - 1) ** p - mpmath.mpf(k) ** a * (k - 1 - a)
            else:
                exact_a = mpmath.mpf(k + 1 - j) ** p + mpmath.mpf(k - 1 - j) ** p - 2 * mpmath.mpf(k - j) ** p
            exact_a /= a * p
            assert a_weight(j, k, alpha, 1.0) == pytest.approx(float(exact_a), rel=1e-11)


def test_weight_index_errors():
    with pytest.raises(IndexError):
        b_weight(3, 3, 0.5, 0.1)
    with pytest.raises(IndexError):
        a_weight(4, 3, 0.5, 0.1)
    with pytest.raises(IndexError):
        b_weight(0, 0, 0.5, 0.1)


def test_vector_weights_agree_with_scalar():
    for alpha in ALPHAS:
        k = 9
        np.testing.assert_allclose(b_weights(k, alpha, 0.1), [b_weight(j, k, alpha, 0.1) for j in range(k)], rtol=1e-15)
        np.testing.assert_allclose(a_weights(k, alpha, 0.1), [a_weight(j, k, alpha, 0.1) for j in range(k + 1)], rtol=1e-15)


@given(
    st.floats(1e-3, 1.0),
    st.floats(1e-6, 10.0),
    st.integers(1, 2000),
    st.data(),
)
def test_b_weights_positive(alpha, h, k, data):
    j = data.draw(st.integers(0, k - 1))
    assert b_weight(j, k, alpha, h) > 0.0


@pytest.mark.parametrize("alpha", ALPHAS)
def test_constant_and_linear_exactness(alpha):
    h = 0.037
    for k in range(1, 101):
        t_k = k * h
        assert b_weights(k, alpha, h).sum() == pytest.approx(t_k**alpha / alpha, rel=1e-12)
        a = a_weights(k, alpha, h)
        assert a.sum() == pytest.approx(t_k**alpha / alpha, rel=1e-12)
        if k <= 50:
            t = h * np.arange(k + 1)
            assert a @ t == pytest.approx(t_k ** (alpha + 1) / (alpha * (alpha + 1)), rel=1e-10)


def test_config_validation():
    ivp = FractionalIVP(0.5, 0.0, 0.0, RICCATI, 1.0)
    assert AbmConfig.covering(ivp, h=0.1).n_steps == 10
    assert AbmConfig.covering(ivp, n_steps=4).h == 0.25
    with pytest.raises(ValueError):
        AbmConfig.covering(ivp, h=0.3)
    with pytest.raises(ValueError):
        AbmConfig.covering(ivp)
    with pytest.raises(ValueError):
        AbmConfig.covering(ivp, h=0.1, n_steps=10)
    with pytest.raises(ValueError):
        AbmConfig(h=0.1, n_steps=0)
    with pytest.raises(ValueError):
        AbmConfig(h=0.1, n_steps=10, corrector_iterations=0)
    with pytest.raises(ValueError, match="t_end - t0"):
        solve_pece(ivp, AbmConfig(h=0.1, n_steps=9))


def test_predictor_examples():
    h = 0.01
    for alpha in ALPHAS:
        ivp = FractionalIVP(alpha, 0.0, 0.0, ONE, 1.0)
        cfg = AbmConfig.covering(ivp, h=h)
        assert predictor([0.0], ivp, cfg) == pytest.approx(h**alpha / math.gamma(alpha + 1), rel=1e-13)
    ivp = FractionalIVP(0.4, 0.0, 2.5, ZERO, 1.0)
    cfg = AbmConfig.covering(ivp, h=0.1)
    assert predictor([2.5, 2.5, 2.5], ivp, cfg) == 2.5
    ivp = FractionalIVP(0.7, 0.0, 0.0, RICCATI, 1.0)
    cfg = AbmConfig.covering(ivp, h=0.01)
    # mpmath: 0.01**0.7 / 0.7 / gamma(0.7)
    assert predictor([0.0], ivp, cfg) == pytest.approx(0.04381358136730189, rel=1e-12)


def test_predictor_accepts_trajectory():
    ivp = FractionalIVP(0.7, 0.0, 0.0, RICCATI, 1.0)
    cfg = AbmConfig.covering(ivp, h=0.01)
    traj = solve_pece(ivp, cfg)
    prefix = Trajectory(traj.nodes[:5], traj.values[:5])
    assert predictor(prefix, ivp, cfg) == predictor(traj.values[:5], ivp, cfg)


def test_corrector_constant_rhs():
    h = 0.02
    for alpha in ALPHAS:
        ivp = FractionalIVP(alpha, 0.0, 0.0, ONE, 1.0)
        cfg = AbmConfig.covering(ivp, h=h)
        history = [(j * h) ** alpha / math.gamma(alpha + 1) for j in range(7)]
        y_pred = predictor(history, ivp, cfg)
        assert corrector_step(history, y_pred, ivp, cfg) == pytest.approx(
            (7 * h) ** alpha / math.gamma(alpha + 1), rel=1e-12
        )


def test_corrector_zero_rhs():
    ivp = FractionalIVP(0.6, 0.0, -1.25, ZERO, 1.0)
    cfg = AbmConfig.covering(ivp, h=0.1)
    assert corrector_step([-1.25] * 4, -1.25, ivp, cfg) == -1.25


def test_corrector_alpha_one_is_trapezoid_step():
    ivp = FractionalIVP(1.0, 0.0, 0.0, RICCATI, 1.0)
    cfg = AbmConfig.covering(ivp, h=0.05)
    history = np.array([0.0, 0.05, 0.11, 0.16, 0.2])
    y_pred = 0.27
    f = riccati(history)
    expected = 0.05 * (0.5 * f[0] + f[1:].sum() + 0.5 * riccati(y_pred))
    assert corrector_step(history, y_pred, ivp, cfg) == pytest.approx(expected, rel=1e-14)


def test_corrector_iterations_converge_to_implicit_trapezoid():
    ivp = FractionalIVP(0.7, 0.0, 0.0, RICCATI, 0.1)
    history = [0.0, 0.05, 0.09]
    cfg = AbmConfig.covering(ivp, n_steps=10, corrector_iterations=60)
    y = corrector_step(history, predictor(history, ivp, cfg), ivp, cfg)
    # a fixed point of the corrector equation
    cfg1 = AbmConfig.covering(ivp, n_steps=10, corrector_iterations=1)
    assert corrector_step(history, y, ivp, cfg1) == pytest.approx(y, rel=1e-13)


def test_solve_pece_matches_direct_transcription():
    ivp = FractionalIVP(0.7, 0.0, 0.0, RICCATI, 1.0)
    traj = solve_pece(ivp, AbmConfig.covering(ivp, h=0.01))
    np.testing.assert_allclose(traj.values, abm_reference(0.7, 0.01, 100, riccati), rtol=1e-12, atol=1e-14)


def test_solve_pece_step_by_step_matches_public_ops():
    ivp = FractionalIVP(0.45, 0.0, 0.3, RICCATI, 0.5)
    cfg = AbmConfig.covering(ivp, n_steps=25, corrector_iterations=2)
    traj = solve_pece(ivp, cfg)
    values = [ivp.y0]
    for _ in range(cfg.n_steps):
        values.append(corrector_step(values, predictor(values, ivp, cfg), ivp, cfg))
    np.testing.assert_allclose(traj.values, values, rtol=1e-13)
    assert traj.values[0] == ivp.y0


@pytest.mark.parametrize("alpha", ALPHAS)
def test_constant_rhs_exact(alpha):
    ivp = FractionalIVP(alpha, 0.0, 0.0, ONE, 2.0)
    traj = solve_pece(ivp, AbmConfig.covering(ivp, n_steps=200))
    exact = traj.nodes**alpha / math.gamma(alpha + 1)
    np.testing.assert_allclose(traj.values[1:], exact[1:], rtol=1e-12)


def test_shifted_base_time():
    ivp0 = FractionalIVP(0.6, 0.0, 0.2, RICCATI, 1.0)
    ivp5 = FractionalIVP(0.6, 5.0, 0.2, RICCATI, 6.0)
    a = solve_pece(ivp0, AbmConfig.covering(ivp0, n_steps=50))
    b = solve_pece(ivp5, AbmConfig.covering(ivp5, n_steps=50))
    np.testing.assert_allclose(b.values, a.values, rtol=1e-14)
    np.testing.assert_allclose(b.nodes, a.nodes + 5.0, rtol=1e-14)


def test_riccati_hand_off_value():
    ivp = FractionalIVP(0.7, 0.0, 0.0, RICCATI, 0.2)
    traj = solve_pece(ivp, AbmConfig.covering(ivp, h=0.001))
    assert traj.values[-1] == pytest.approx(0.55, abs=0.005)


def test_alpha_one_agrees_with_rk4(riccati_1):
    traj = solve_pece(riccati_1, AbmConfig.covering(riccati_1, h=0.01))
    _, y_rk = rk4(riccati, 0.0, 3.0, 0.001)
    assert np.max(np.abs(traj.values - y_rk[::10])) <= 1e-3


def test_alpha_one_is_classical_trapezoid_pece(riccati_1):
    traj = solve_pece(riccati_1, AbmConfig.covering(riccati_1, h=0.01))
    np.testing.assert_allclose(traj.values, trapezoid_pece(riccati, 0.0, 0.01, 300), rtol=0, atol=1e-12)


def test_self_consistency_under_refinement():
    ivp = FractionalIVP(0.7, 0.0, 0.0, RICCATI, 1.0)
    gaps = []
    for h in (0.02, 0.01, 0.005, 0.0025):
        coarse = solve_pece(ivp, AbmConfig.covering(ivp, h=h)).values
        fine = solve_pece(ivp, AbmConfig.covering(ivp, h=h / 2)).values[::2]
        gaps.append(np.max(np.abs(coarse - fine)))
    assert all(b < a for a, b in zip(gaps, gaps[1:])), gaps


def test_overflow_is_reported():
    # y' = y^2, y(0) = 1 blows up at t = 1
    ivp = FractionalIVP(1.0, 0.0, 1.0, PolynomialRHS((0.0, 0.0, 1.0)), 5.0)
    with pytest.raises(SolverOverflowError) as info:
        solve_pece(ivp, AbmConfig.covering(ivp, h=0.05))
    assert info.value.index is not None and info.value.index > 1
