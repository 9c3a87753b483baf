"""
Extended Kalman filter baseline with numeric Jacobians
"""
import numpy as np

from .base import BaseFilter, FilterState
from .linalg import solve_gain, symmetrize


__all__ = [
    "numeric_jacobian",
    "ekf_predict",
    "ekf_update",
    "ekf_step",
    "ExtendedKalmanFilter",
]


#: Step of the central differences per state coordinate
JACOBIAN_STEP = 1e-6


def numeric_jacobian(func, x, step=JACOBIAN_STEP):
    """
    Jacobian of ``func`` at ``x`` by central finite differences.

    Parameters
    ----------
    func: callable
        Maps a vector of length m to a vector of length n
    x: numpy.ndarray, shape (m,)
    step: float

    Returns
    -------
    jacobian: numpy.ndarray, shape (n, m)
    """
    x = np.asanyarray(x, dtype=np.float64)
    offsets = step * np.eye(len(x))
    columns = [
        (np.atleast_1d(func(x + offset)) - np.atleast_1d(func(x - offset))) / (2 * step)
        for offset in offsets
    ]
    return np.column_stack(columns)


def ekf_predict(state, transition, process_cov):
    """
    Time update with a linear transition, x̄ = A x, Σ̄ = A Σ A^T + Q.

    Parameters
    ----------
    state: FilterState
    transition: LinearTransition
    process_cov: numpy.ndarray

    Returns
    -------
    predicted: FilterState
    """
    A = transition.matrix
    mean = transition(state.mean)
    cov = A @ state.cov @ A.T + process_cov
    return FilterState(mean, symmetrize(cov))


def ekf_update(predicted, model, y, noise_cov=None):
    """
    Measurement update linearizing ``model`` at the predicted mean.

    Parameters
    ----------
    predicted: FilterState
    model: ObservationModel
    y: numpy.ndarray
    noise_cov: numpy.ndarray or None
        Measurement noise covariance R, defaults to ``model.noise_cov``

    Returns
    -------
    posterior: FilterState
    """
    if noise_cov is None:
        noise_cov = model.noise_cov

    G = numeric_jacobian(model, predicted.mean)
    innovation_cov = G @ predicted.cov @ G.T + noise_cov
    cross_cov = predicted.cov @ G.T

    gain = solve_gain(cross_cov, innovation_cov)
    mean = predicted.mean + gain @ (np.asanyarray(y) - model(predicted.mean))
    cov = predicted.cov - gain @ G @ predicted.cov
    return FilterState(mean, symmetrize(cov))


def ekf_step(state, transition, process_cov, model, y, noise_cov=None):
    """One predict and update step of the extended Kalman filter"""
    predicted = ekf_predict(state, transition, process_cov)
    return ekf_update(predicted, model, y, noise_cov)


class ExtendedKalmanFilter(BaseFilter):
    """
    Extended Kalman filter, see `ekf_step`.
    """

    def update(self, y):
        return ekf_step(
            self.state, self.transition, self.process_cov, self.observation, y
        )
