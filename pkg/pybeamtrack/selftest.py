"""
Fast invariant checks of an installation, run by ``pybeamtrack selftest``
"""
import sys
import time

import numpy as np
from numpy.testing import assert_allclose

from .channel import (
    ArrayGeometry,
    beamspace_element,
    dft_matrix,
    dirichlet,
    steering_vector,
    virtual_angles,
)
from .filters import (
    ExtendedKalmanFilter,
    FilterState,
    LinearTransition,
    ObservationModel,
    UnscentedKalmanFilter,
    UtParams,
    compute_weights,
    default_spread_grid,
    kalman_step,
    sigma_points,
)


__all__ = ["CHECKS", "run_selftest"]


def _random_psd(rng, m):
    a = rng.normal(size=(m, m))
    return a @ a.T + 1e-3 * np.eye(m)


def check_unitarity(rng):
    """DFT matrices are unitary"""
    for n in (2, 4, 8, 16, 32):
        U = dft_matrix(n)
        assert_allclose(U @ U.conj().T, np.eye(n), atol=1e-12)


def check_weights(rng):
    """Mean and covariance weights of every grid point sum up correctly"""
    for m in (1, 4, 20):
        for params in default_spread_grid():
            if not params.is_valid(m):
                continue
            w_mean, w_cov = compute_weights(m, params)
            assert_allclose(w_mean.sum(), 1, rtol=0, atol=1e-12)
            assert_allclose(w_cov.sum(), 2 - params.gamma**2 + params.beta, atol=1e-12)


def check_moment_matching(rng):
    """Sigma points reproduce mean and covariance of the state"""
    for m in (1, 4, 8, 20):
        state = FilterState(rng.normal(size=m), _random_psd(rng, m))
        for params in default_spread_grid():
            if not params.is_valid(m):
                continue
            sigma = sigma_points(state, params)
            assert_allclose(sigma.mean(), state.mean, rtol=0, atol=1e-12)

        sigma = sigma_points(state, UtParams(1.0, 0.0))
        assert_allclose(sigma.covariance(), state.cov, rtol=0, atol=1e-10)


def _affine_problem(rng, m=4, n=2):
    A = np.eye(m) + 0.05 * rng.normal(size=(m, m))
    b = 0.1 * rng.normal(size=m)
    Q = 0.01 * _random_psd(rng, m)
    H = rng.normal(size=(n, m))
    d = rng.normal(size=n)
    R = 0.1 * _random_psd(rng, n)
    return A, b, Q, H, d, R


def check_affine_oracle(rng, n_slots=20):
    """UKF and EKF agree with a linear Kalman filter on an affine model"""
    A, b, Q, H, d, R = _affine_problem(rng)
    m = len(A)
    model = ObservationModel(lambda x: H @ x + d, len(H), R)
    transition = LinearTransition(A, b)
    initial = FilterState(rng.normal(size=m), _random_psd(rng, m))

    ukf = UnscentedKalmanFilter(initial, transition, Q, model)
    ekf = ExtendedKalmanFilter(initial, transition, Q, model)
    oracle = initial

    x = rng.multivariate_normal(initial.mean, initial.cov)
    for _ in range(n_slots):
        x = A @ x + b + rng.multivariate_normal(np.zeros(m), Q)
        y = H @ x + d + rng.multivariate_normal(np.zeros(len(H)), R)

        oracle = kalman_step(oracle, A, Q, H, R, y, b, d)
        ukf_state = ukf.step(y)
        ekf_state = ekf.step(y)

        assert_allclose(ukf_state.mean, oracle.mean, rtol=0, atol=1e-8)
        assert_allclose(ukf_state.cov, oracle.cov, rtol=0, atol=1e-8)
        assert_allclose(ekf_state.mean, oracle.mean, rtol=0, atol=1e-6)
        assert_allclose(ekf_state.cov, oracle.cov, rtol=0, atol=1e-6)


def check_beamspace_element(rng, n_draws=100):
    """Closed form beamspace entries agree with the DFT transform"""
    for n in (2, 4, 8, 16):
        assert dirichlet(n, 0.0) == n

    for _ in range(n_draws):
        n_t, n_r = rng.choice([2, 4, 8, 16], size=2)
        rx, tx = ArrayGeometry(n_r), ArrayGeometry(n_t)
        theta_a, theta_d = rng.uniform(0, np.pi, 2)
        v, c = rng.integers(n_r), rng.integers(n_t)

        a_r = steering_vector(rx, theta_a)
        a_t = steering_vector(tx, theta_d)
        expected = n_t * n_r * (dft_matrix(n_r) @ np.outer(a_r, a_t.conj()) @ dft_matrix(n_t).conj().T)

        value = beamspace_element(
            phi_a=rx.spacing_ratio * np.sin(theta_a),
            phi_d=tx.spacing_ratio * np.sin(theta_d),
            psi_t=virtual_angles(n_t)[c],
            psi_r=virtual_angles(n_r)[v],
            n_t=n_t,
            n_r=n_r,
        )
        assert_allclose(value, expected[v, c], rtol=0, atol=1e-9)


#: Name and function of every check, in execution order
CHECKS = [
    ("dft unitarity", check_unitarity),
    ("weight normalization", check_weights),
    ("moment matching", check_moment_matching),
    ("affine kalman oracle", check_affine_oracle),
    ("beamspace closed form", check_beamspace_element),
]


def run_selftest(seed=0, checks=None, file=None):
    """
    Run the invariant checks and print one PASS / FAIL line per check.

    Parameters
    ----------
    seed: int
        Seed of the random inputs
    checks: list[tuple[str, callable]] or None
        Checks to run, defaults to `CHECKS`
    file: file-like or None
        Destination of the report, defaults to stdout

    Returns
    -------
    passed: bool
        True if every check passed
    """
    if checks is None:
        checks = CHECKS
    if file is None:
        file = sys.stdout

    passed = True
    for name, check in checks:
        rng = np.random.default_rng(seed)
        start = time.perf_counter()
        try:
            check(rng)
        except Exception as e:
            passed = False
            detail = str(e).strip().splitlines()
            print(f"FAIL {name}: {detail[0] if detail else type(e).__name__}", file=file)
        else:
            print(f"PASS {name} ({time.perf_counter() - start:.2f} s)", file=file)

    return passed
