"""
Unscented and extended Kalman filters for beam and channel tracking
"""
from .base import BaseFilter, FilterState, LinearTransition
from .extended import (
    ExtendedKalmanFilter,
    ekf_predict,
    ekf_step,
    ekf_update,
    numeric_jacobian,
)
from .linalg import jittered_cholesky, solve_gain, symmetrize
from .linear import kalman_step
from .observation import (
    ObservationModel,
    beam_observation,
    dl_observation,
    ul_observation,
)
from .unscented import (
    SigmaSet,
    UnscentedKalmanFilter,
    UtParams,
    compute_weights,
    default_spread_grid,
    optimize_spread,
    sigma_points,
    spread_objective,
    ukf_predict,
    ukf_update,
    unscented_transform,
)


__all__ = [
    "BaseFilter",
    "ExtendedKalmanFilter",
    "FilterState",
    "LinearTransition",
    "ObservationModel",
    "SigmaSet",
    "UnscentedKalmanFilter",
    "UtParams",
    "beam_observation",
    "compute_weights",
    "default_spread_grid",
    "dl_observation",
    "ekf_predict",
    "ekf_step",
    "ekf_update",
    "jittered_cholesky",
    "kalman_step",
    "numeric_jacobian",
    "optimize_spread",
    "sigma_points",
    "solve_gain",
    "spread_objective",
    "symmetrize",
    "ukf_predict",
    "ukf_update",
    "ul_observation",
    "unscented_transform",
]
