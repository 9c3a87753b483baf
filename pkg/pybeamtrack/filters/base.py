"""Base classes for the tracking filters"""
from abc import ABCMeta, abstractmethod
from dataclasses import dataclass

import numpy as np

from ..exceptions import ConfigurationError, NumericalError


__all__ = [
    "FilterState",
    "LinearTransition",
    "BaseFilter",
]


#: Tolerated asymmetry of a covariance matrix
SYMMETRY_TOLERANCE = 1e-10
#: Tolerated negative eigenvalue of a covariance matrix
PSD_TOLERANCE = 1e-9


@dataclass(frozen=True)
class FilterState:
    """
    Gaussian belief over the tracked state.

    Attributes
    ----------
    mean: numpy.ndarray, shape (m,)
    cov: numpy.ndarray, shape (m, m)
    """

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.array(self.mean, dtype=np.float64, ndmin=1)
        cov = np.array(self.cov, dtype=np.float64, ndmin=2)
        if mean.ndim != 1 or cov.shape != (len(mean), len(mean)):
            raise ConfigurationError(
                f"Inconsistent state shapes: mean {mean.shape}, cov {cov.shape}"
            )
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def dim(self):
        return len(self.mean)

    def check(self):
        """
        Raise a `~pybeamtrack.exceptions.NumericalError` unless the
        covariance is finite, symmetric and positive semidefinite.
        """
        if not (np.all(np.isfinite(self.mean)) and np.all(np.isfinite(self.cov))):
            raise NumericalError("Filter state is not finite")

        asymmetry = np.max(np.abs(self.cov - self.cov.T), initial=0.0)
        if asymmetry > SYMMETRY_TOLERANCE:
            raise NumericalError(f"Covariance is not symmetric ({asymmetry:.1e})")

        smallest = np.linalg.eigvalsh(self.cov).min()
        if smallest < -PSD_TOLERANCE:
            raise NumericalError(
                f"Covariance is not positive semidefinite (eigenvalue {smallest:.1e})"
            )


class LinearTransition:
    """
    Affine state transition x ↦ A x + b, applied row-wise to point arrays.
    """

    def __init__(self, matrix, offset=None):
        self.matrix = np.atleast_2d(np.asanyarray(matrix, dtype=np.float64))
        n = self.matrix.shape[0]
        self.offset = np.zeros(n) if offset is None else np.asanyarray(offset, dtype=np.float64)

    def __call__(self, points):
        return points @ self.matrix.T + self.offset


class BaseFilter(metaclass=ABCMeta):
    """
    Base class for filters tracking one state through a sequence of slots.

    Filters are single-threaded state machines, `step` advances
    the belief by one slot using the observation of that slot.
    """

    def __init__(self, state, transition, process_cov, observation):
        """BaseFilter

        Parameters
        ----------
        state: FilterState
            Belief at slot 0
        transition: LinearTransition
            Deterministic part of the state evolution
        process_cov: numpy.ndarray
            Additive process noise covariance Q
        observation: pybeamtrack.filters.ObservationModel
            Maps states to real observation vectors
        """
        self.state = state
        self.transition = transition
        self.process_cov = np.asanyarray(process_cov, dtype=np.float64)
        self.observation = observation
        self.slot = 0

    @abstractmethod
    def update(self, y):
        """Overridable predict and update code of one slot, returning the new state"""

    def step(self, y):
        """
        Advance the filter by one slot.

        Parameters
        ----------
        y: numpy.ndarray
            Real observation vector of the new slot

        Returns
        -------
        state: FilterState
            Posterior belief
        """
        self.slot += 1
        try:
            state = self.update(np.asanyarray(y, dtype=np.float64))
            state.check()
        except NumericalError as e:
            raise e.at_slot(self.slot) from None

        self.state = state
        return state
