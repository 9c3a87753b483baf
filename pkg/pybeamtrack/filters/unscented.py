"""
Unscented Kalman filter with optimized sigma-point spreading
"""
from dataclasses import dataclass
import itertools
import logging

import numpy as np

from ..exceptions import InvalidParameterError
from .base import BaseFilter, FilterState
from .linalg import jittered_cholesky, solve_gain, symmetrize


__all__ = [
    "UtParams",
    "SigmaSet",
    "compute_weights",
    "sigma_points",
    "unscented_transform",
    "ukf_predict",
    "ukf_update",
    "spread_objective",
    "optimize_spread",
    "default_spread_grid",
    "UnscentedKalmanFilter",
]


log = logging.getLogger(__name__)

#: Spreading parameters γ scanned by default
DEFAULT_GAMMA_GRID = tuple(round(0.1 * i, 1) for i in range(1, 11))
#: Spreading parameters κ scanned by default
DEFAULT_KAPPA_GRID = (0.0, 0.5, 1.0, 2.0, 3.0)


@dataclass(frozen=True)
class UtParams:
    """
    Scaling parameters of the unscented transform.

    Attributes
    ----------
    gamma: float
        Spread γ of the sigma points around the mean, in (0, 1]
    kappa: float
        Secondary scaling κ >= 0
    beta: float
        Prior knowledge of the distribution, 2 is optimal for gaussians
    """

    gamma: float = 1.0
    kappa: float = 0.0
    beta: float = 2.0

    def __post_init__(self):
        if not 0 < self.gamma <= 1:
            raise InvalidParameterError(f"gamma must be in (0, 1], got {self.gamma}")
        if self.kappa < 0:
            raise InvalidParameterError(f"kappa must be >= 0, got {self.kappa}")

    def lambda_(self, m):
        """Λ = γ² (m + κ) - m"""
        return self.gamma**2 * (m + self.kappa) - m

    def is_valid(self, m):
        return self.lambda_(m) + m > 0


@dataclass(frozen=True)
class SigmaSet:
    """
    Sigma points with their mean and covariance weights.

    Attributes
    ----------
    points: numpy.ndarray, shape (2 m + 1, m)
    w_mean: numpy.ndarray, shape (2 m + 1,)
    w_cov: numpy.ndarray, shape (2 m + 1,)
    """

    points: np.ndarray
    w_mean: np.ndarray
    w_cov: np.ndarray

    def offsets(self):
        # relative to the center point, identical points give exact zeros
        return self.points - self.points[0]

    def mean(self):
        return self.points[0] + self.w_mean @ self.offsets()

    def covariance(self):
        offsets = self.offsets()
        deviation = offsets - self.w_mean @ offsets
        return symmetrize((self.w_cov[:, np.newaxis] * deviation).T @ deviation)


def compute_weights(m, params):
    """
    Mean and covariance weights of the 2 m + 1 sigma points.

    Parameters
    ----------
    m: int
        State dimension
    params: UtParams

    Returns
    -------
    w_mean: numpy.ndarray
    w_cov: numpy.ndarray
    """
    lambda_ = params.lambda_(m)
    scaling = lambda_ + m
    if not scaling > 0:
        raise InvalidParameterError(
            f"Λ + m must be > 0, got {scaling} for m={m} and {params}"
        )

    w_mean = np.full(2 * m + 1, 1 / (2 * scaling))
    w_cov = w_mean.copy()
    w_mean[0] = lambda_ / scaling
    w_cov[0] = lambda_ / scaling + (1 - params.gamma**2 + params.beta)
    return w_mean, w_cov


def sigma_points(state, params):
    """
    Sigma points x̄, x̄ + S_i, x̄ - S_i where S_i are the columns of the lower
    triangular factor of (m + Λ) Σ.

    Parameters
    ----------
    state: FilterState
    params: UtParams

    Returns
    -------
    sigma: SigmaSet
    """
    m = state.dim
    w_mean, w_cov = compute_weights(m, params)
    factor = jittered_cholesky((params.lambda_(m) + m) * state.cov)

    points = np.empty((2 * m + 1, m))
    points[0] = state.mean
    points[1:m + 1] = state.mean + factor.T
    points[m + 1:] = state.mean - factor.T
    return SigmaSet(points, w_mean, w_cov)


def unscented_transform(sigma, func):
    """
    Propagate sigma points through ``func``.

    Parameters
    ----------
    sigma: SigmaSet
    func: callable
        Maps a (n_points, m) array to a (n_points, n) array

    Returns
    -------
    mean: numpy.ndarray, shape (n,)
    cov: numpy.ndarray, shape (n, n)
        Weighted covariance of the transformed points, without additive noise
    transformed: numpy.ndarray, shape (n_points, n)
    """
    transformed = np.asanyarray(func(sigma.points), dtype=np.float64)
    transformed_sigma = SigmaSet(transformed, sigma.w_mean, sigma.w_cov)
    return transformed_sigma.mean(), transformed_sigma.covariance(), transformed


def ukf_predict(state, transition, process_cov, params):
    """
    Time update of the unscented Kalman filter.

    Parameters
    ----------
    state: FilterState
        Posterior of the previous slot
    transition: callable
        Deterministic part of the process model applied to point arrays,
        e.g. a `~pybeamtrack.filters.LinearTransition`
    process_cov: numpy.ndarray
        Additive process noise covariance Q
    params: UtParams

    Returns
    -------
    predicted: FilterState
    """
    sigma = sigma_points(state, params)
    mean, cov, _ = unscented_transform(sigma, transition)
    return FilterState(mean, symmetrize(cov + process_cov))


def ukf_update(predicted, model, y, params, sigma=None):
    """
    Measurement update of the unscented Kalman filter.

    x = x̄ + K (y - z̄), Σ = Σ̄ - K Σ_z K^T with K = Σ_xz Σ_z^-1.

    Parameters
    ----------
    predicted: FilterState
        Output of `ukf_predict`
    model: ObservationModel
    y: numpy.ndarray
        Real observation vector
    params: UtParams
    sigma: SigmaSet or None
        Sigma points of ``predicted``, drawn if not given

    Returns
    -------
    posterior: FilterState
    """
    if sigma is None:
        sigma = sigma_points(predicted, params)

    z_mean, z_cov, transformed = unscented_transform(sigma, model)
    innovation_cov = z_cov + model.noise_cov

    dx = sigma.points - predicted.mean
    dz = transformed - z_mean
    cross_cov = (sigma.w_cov[:, np.newaxis] * dx).T @ dz

    gain = solve_gain(cross_cov, innovation_cov)
    mean = predicted.mean + gain @ (np.asanyarray(y) - z_mean)
    cov = predicted.cov - gain @ innovation_cov @ gain.T
    return FilterState(mean, symmetrize(cov))


def spread_objective(predicted, model, y, params):
    """Squared norm of the innovation y - z̄ under ``params``"""
    z_mean, _, _ = unscented_transform(sigma_points(predicted, params), model)
    return float(np.sum((np.asanyarray(y) - z_mean) ** 2))


def optimize_spread(predicted, model, y, grid):
    """
    Choose the spreading parameters minimizing the innovation.

    Parameters
    ----------
    predicted: FilterState
        Predicted belief of the slot
    model: ObservationModel
    y: numpy.ndarray
        Observation of the slot
    grid: sequence[UtParams]
        Candidates, scanned in order; the first minimum wins

    Returns
    -------
    params: UtParams
    """
    if len(grid) == 0:
        raise InvalidParameterError("Spread optimization needs at least one candidate")

    best, best_objective = None, np.inf
    for candidate in grid:
        objective = spread_objective(predicted, model, y, candidate)
        if objective < best_objective:
            best, best_objective = candidate, objective

    if best is None:
        # all objectives nan or inf
        best = grid[0]

    log.debug(
        "Chose gamma=%.2f, kappa=%.2f with innovation %.3e",
        best.gamma, best.kappa, best_objective,
    )
    return best


def default_spread_grid(beta=2.0, gammas=DEFAULT_GAMMA_GRID, kappas=DEFAULT_KAPPA_GRID):
    """Cartesian product of ``gammas`` and ``kappas``, γ varying slowest"""
    return [
        UtParams(gamma=gamma, kappa=kappa, beta=beta)
        for gamma, kappa in itertools.product(gammas, kappas)
    ]


class UnscentedKalmanFilter(BaseFilter):
    """
    Unscented Kalman filter whose sigma-point spread is optimized
    on the first slot and frozen afterwards.
    """

    def __init__(
        self,
        state,
        transition,
        process_cov,
        observation,
        params=None,
        spread_grid=None,
    ):
        """UnscentedKalmanFilter

        Parameters
        ----------
        state, transition, process_cov, observation:
            See `~pybeamtrack.filters.BaseFilter`
        params: UtParams or None
            Fixed spreading parameters. If None, they are optimized
            over ``spread_grid`` on the first slot.
        spread_grid: sequence[UtParams] or None
            Candidates for the optimization, defaults to `default_spread_grid`
        """
        super().__init__(state, transition, process_cov, observation)

        if spread_grid is None:
            spread_grid = default_spread_grid()
        self.spread_grid = [p for p in spread_grid if p.is_valid(state.dim)]
        self.params = params

        if params is None and len(self.spread_grid) == 0:
            raise InvalidParameterError(
                f"No candidate of the spread grid is valid for m={state.dim}"
            )

    def update(self, y):
        params = self.params if self.params is not None else self.spread_grid[0]
        predicted = ukf_predict(self.state, self.transition, self.process_cov, params)

        if self.params is None:
            self.params = optimize_spread(predicted, self.observation, y, self.spread_grid)
            predicted = ukf_predict(self.state, self.transition, self.process_cov, self.params)

        return ukf_update(predicted, self.observation, y, self.params)
