"""
Textbook linear Kalman filter, the exact reference for affine models
"""
import numpy as np

from .base import FilterState


__all__ = ["kalman_step"]


def kalman_step(state, A, Q, H, R, y, b=None, d=None):
    """
    Kalman filter step for x_t = A x_{t-1} + b + u, y = H x_t + d + v.

    Parameters
    ----------
    state: FilterState
    A, Q: numpy.ndarray
        Transition matrix and process noise covariance
    H, R: numpy.ndarray
        Observation matrix and measurement noise covariance
    y: numpy.ndarray
        Observation
    b, d: numpy.ndarray or None
        Offsets of the transition and the observation

    Returns
    -------
    posterior: FilterState
    """
    b = 0 if b is None else b
    d = 0 if d is None else d

    x = A @ state.mean + b
    P = A @ state.cov @ A.T + Q

    S = H @ P @ H.T + R
    K = P @ H.T @ np.linalg.inv(S)
    x = x + K @ (y - H @ x - d)
    identity = np.eye(len(x))
    # Joseph form, independent of the update used by the nonlinear filters
    P = (identity - K @ H) @ P @ (identity - K @ H).T + K @ R @ K.T
    return FilterState(x, 0.5 * (P + P.T))
