import numpy as np

from .exceptions import InvalidInputError

__all__ = [
    "mean_squared_error",
    "standard_error",
    "enhancement",
]


def mean_squared_error(squared_errors, axis=0):
    """
    Arithmetic mean of squared errors over Monte Carlo runs.

    Parameters
    ----------
    squared_errors: array like
        Squared errors, runs along ``axis``
    axis: int
        Axis enumerating the runs

    Returns
    -------
    mse: numpy.ndarray
    """
    squared_errors = np.asanyarray(squared_errors, dtype=np.float64)
    if squared_errors.size == 0 or squared_errors.shape[axis] == 0:
        raise InvalidInputError("Cannot average an empty set of runs")
    return squared_errors.mean(axis=axis)


def standard_error(squared_errors, axis=0):
    """
    Standard error of `mean_squared_error`.

    Returns nan where fewer than two runs are available.
    """
    squared_errors = np.asanyarray(squared_errors, dtype=np.float64)
    n = squared_errors.shape[axis]
    if n < 2:
        shape = np.delete(squared_errors.shape, axis)
        return np.full(shape, np.nan)
    return squared_errors.std(axis=axis, ddof=1) / np.sqrt(n)


def enhancement(mse_ukf, mse_ekf):
    """
    Relative improvement (MSE_EKF - MSE_UKF) / MSE_EKF in percent.

    If both errors vanish the enhancement is 0.
    """
    mse_ukf = np.asanyarray(mse_ukf, dtype=np.float64)
    mse_ekf = np.asanyarray(mse_ekf, dtype=np.float64)

    with np.errstate(divide="ignore", invalid="ignore"):
        result = 100 * (mse_ekf - mse_ukf) / mse_ekf

    result = np.where((mse_ekf == 0) & (mse_ukf == 0), 0.0, result)
    if result.ndim == 0:
        return float(result)
    return result
