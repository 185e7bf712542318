import numpy as np
import pytest

from disputekit.network import Activation, MlpArchitecture, gradient, init_weights, objective
from disputekit.scg import ScgLimits, scg_minimize


def test_quadratic_bowl():
    res = scg_minimize(lambda w: float(w @ w), lambda w: 2 * w,
                       np.array([3.0, 4.0]), ScgLimits(max_iters=50))
    assert np.linalg.norm(res.weights) < 1e-6
    assert res.iterations <= 50


def test_start_at_minimum_returns_immediately():
    res = scg_minimize(lambda w: float(w @ w), lambda w: 2 * w,
                       np.zeros(3), ScgLimits())
    assert res.accepted == 0
    assert res.converged
    assert np.array_equal(res.weights, np.zeros(3))


def test_trace_non_increasing():
    rng = np.random.default_rng(1)
    A = rng.standard_normal((6, 6))
    H = A @ A.T + 0.5 * np.eye(6)
    b = rng.standard_normal(6)
    res = scg_minimize(lambda w: float(0.5 * w @ H @ w + b @ w),
                       lambda w: H @ w + b,
                       rng.standard_normal(6), ScgLimits(max_iters=100))
    assert all(b2 <= a2 + 1e-12 for a2, b2 in zip(res.trace, res.trace[1:]))


def test_rosenbrock_progress():
    def f(w):
        return float(100 * (w[1] - w[0] ** 2) ** 2 + (1 - w[0]) ** 2)

    def g(w):
        return np.array([
            -400 * w[0] * (w[1] - w[0] ** 2) - 2 * (1 - w[0]),
            200 * (w[1] - w[0] ** 2),
        ])

    res = scg_minimize(f, g, np.array([-1.2, 1.0]), ScgLimits(max_iters=800, grad_tol=1e-8))
    assert f(res.weights) < 1e-6


def test_nonfinite_start_rejected():
    with pytest.raises(ValueError):
        scg_minimize(lambda w: float("nan"), lambda w: w, np.zeros(2))


def test_xor_training():
    X = np.array([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]])
    T = np.array([0.0, 1.0, 1.0, 0.0])
    arch = MlpArchitecture(d=2, M=4, hidden_activation=Activation.TANH,
                           output_activation=Activation.LOGISTIC)
    wins = 0
    for seed in range(10):
        w0 = init_weights(arch, seed)
        res = scg_minimize(
            lambda w: objective(arch, w, X, T),
            lambda w: gradient(arch, w, X, T),
            w0, ScgLimits(max_iters=400, grad_tol=1e-8),
        )
        if objective(arch, res.weights, X, T) < 0.05:
            wins += 1
    assert wins >= 8
