import numpy as np
from numpy.testing import assert_allclose


def test_numeric_jacobian_linear(rng):
    from pybeamtrack.filters import numeric_jacobian

    M = rng.normal(size=(3, 5))
    x = rng.normal(size=5)
    assert_allclose(numeric_jacobian(lambda v: M @ v, x), M, atol=1e-8)


def test_numeric_jacobian_nonlinear():
    from pybeamtrack.filters import numeric_jacobian

    def func(x):
        return np.array([np.sin(x[0]) * x[1], x[1] ** 2])

    x = np.array([0.4, 1.5])
    expected = np.array([
        [np.cos(0.4) * 1.5, np.sin(0.4)],
        [0.0, 3.0],
    ])
    assert_allclose(numeric_jacobian(func, x), expected, atol=1e-8)


def test_numeric_jacobian_scalar_output():
    from pybeamtrack.filters import numeric_jacobian

    J = numeric_jacobian(lambda x: np.sum(x**2), np.array([1.0, -2.0]))
    assert J.shape == (1, 2)
    assert_allclose(J, [[2.0, -4.0]], atol=1e-8)


def test_ekf_predict(rng):
    from pybeamtrack.filters import FilterState, LinearTransition, ekf_predict

    A = rng.normal(size=(3, 3))
    b = rng.normal(size=3)
    state = FilterState(rng.normal(size=3), np.eye(3))
    Q = 0.1 * np.eye(3)

    predicted = ekf_predict(state, LinearTransition(A, b), Q)
    assert_allclose(predicted.mean, A @ state.mean + b)
    assert_allclose(predicted.cov, A @ A.T + Q)


def test_ekf_affine_oracle(rng):
    from pybeamtrack.filters import (
        ExtendedKalmanFilter, FilterState, LinearTransition, ObservationModel, kalman_step,
    )

    m, n = 4, 2
    A = np.eye(m) + 0.05 * rng.normal(size=(m, m))
    b = 0.1 * rng.normal(size=m)
    Q = 0.01 * np.eye(m)
    H = rng.normal(size=(n, m))
    d = rng.normal(size=n)
    R = 0.1 * np.eye(n)
    initial = FilterState(rng.normal(size=m), np.eye(m))

    model = ObservationModel(lambda x: H @ x + d, n, R)
    ekf = ExtendedKalmanFilter(initial, LinearTransition(A, b), Q, model)
    oracle = initial
    x = initial.mean
    for _ in range(20):
        x = A @ x + b + rng.multivariate_normal(np.zeros(m), Q)
        y = H @ x + d + rng.multivariate_normal(np.zeros(n), R)

        oracle = kalman_step(oracle, A, Q, H, R, y, b, d)
        state = ekf.step(y)
        assert_allclose(state.mean, oracle.mean, rtol=0, atol=1e-6)
        assert_allclose(state.cov, oracle.cov, rtol=0, atol=1e-6)


def test_ekf_update_custom_noise():
    from pybeamtrack.filters import FilterState, ObservationModel, ekf_update

    predicted = FilterState([0.0], [[1.0]])
    model = ObservationModel(lambda x: x, 1, [[1.0]])

    # a huge noise covariance ignores the observation
    posterior = ekf_update(predicted, model, np.array([3.0]), noise_cov=np.array([[1e12]]))
    assert_allclose(posterior.mean, [0.0], atol=1e-9)

    posterior = ekf_update(predicted, model, np.array([3.0]))
    assert_allclose(posterior.mean, [1.5])
    assert_allclose(posterior.cov, [[0.5]])


def test_ekf_step_constant_observation(rng):
    from pybeamtrack.filters import FilterState, LinearTransition, ObservationModel, ekf_step

    # an observation that does not depend on the state teaches nothing
    model = ObservationModel(lambda x: np.array([1.5, -0.5]), 2, 0.1 * np.eye(2))
    a = rng.normal(size=(3, 3))
    state = FilterState(rng.normal(size=3), a @ a.T + np.eye(3))

    y = np.array([4.0, 2.0])
    posterior = ekf_step(state, LinearTransition(np.eye(3)), np.zeros((3, 3)), model, y)
    assert_allclose(posterior.mean, state.mean, rtol=0, atol=1e-12)
    assert_allclose(posterior.cov, state.cov, rtol=0, atol=1e-12)
