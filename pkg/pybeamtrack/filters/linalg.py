"""
Matrix helpers shared by the filters
"""
import logging

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve, cholesky

from ..exceptions import NumericalError


__all__ = [
    "symmetrize",
    "jittered_cholesky",
    "solve_gain",
]


log = logging.getLogger(__name__)

JITTER_START = 1e-10
JITTER_MAX = 1e-4
JITTER_FACTOR = 10
# entries below this are rounding residue of a vanishing covariance
ZERO_TOLERANCE = 1e-24


def symmetrize(matrix):
    return 0.5 * (matrix + matrix.T)


def jittered_cholesky(
    matrix,
    jitter_start=JITTER_START,
    jitter_max=JITTER_MAX,
    zero_tolerance=ZERO_TOLERANCE,
):
    """
    Lower triangular factor L with L L^T = matrix.

    The matrix is symmetrized first. If the factorization fails,
    ε I is added with ε growing by a factor of 10 from ``jitter_start``
    up to ``jitter_max``. A matrix whose entries are all below
    ``zero_tolerance`` in magnitude factors to zero.

    Parameters
    ----------
    matrix: numpy.ndarray, shape (m, m)
        Positive semidefinite matrix
    jitter_start: float
        First jitter tried
    jitter_max: float
        Largest jitter tried before giving up
    zero_tolerance: float
        Largest entry magnitude treated as an all-zero matrix

    Returns
    -------
    factor: numpy.ndarray, shape (m, m)

    Raises
    ------
    NumericalError: if even the largest jitter does not help
    """
    matrix = symmetrize(np.asanyarray(matrix, dtype=np.float64))
    if np.max(np.abs(matrix), initial=0.0) <= zero_tolerance:
        return np.zeros_like(matrix)

    try:
        return cholesky(matrix, lower=True)
    except LinAlgError:
        pass

    identity = np.eye(len(matrix))
    jitter = jitter_start
    while jitter <= jitter_max:
        try:
            factor = cholesky(matrix + jitter * identity, lower=True)
        except LinAlgError:
            jitter *= JITTER_FACTOR
            continue

        log.debug("Covariance factorization needed jitter %.1e", jitter)
        return factor

    raise NumericalError(
        f"Matrix is not positive semidefinite, factorization failed with jitter {jitter_max}"
    )


def solve_gain(cross_cov, innovation_cov):
    """
    Kalman gain K = Σ_xz Σ_z^-1.

    A vanishing cross covariance gives a zero gain without touching Σ_z.

    Raises
    ------
    NumericalError: if ``innovation_cov`` is not positive definite
    """
    if not np.any(cross_cov):
        return np.zeros_like(cross_cov)

    try:
        factor = cho_factor(symmetrize(innovation_cov), lower=True)
    except LinAlgError:
        raise NumericalError("Innovation covariance is singular") from None

    return cho_solve(factor, cross_cov.T).T
