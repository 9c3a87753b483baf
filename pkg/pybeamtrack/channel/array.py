"""
Uniform linear arrays and their DFT beamspace
"""
from dataclasses import dataclass

import numpy as np

from ..exceptions import ConfigurationError


__all__ = [
    "ArrayGeometry",
    "element_positions",
    "steering_vector",
    "virtual_angles",
    "dft_matrix",
]


@dataclass(frozen=True)
class ArrayGeometry:
    """
    Geometry of a uniform linear array.

    Attributes
    ----------
    n_elements: int
        Number of antenna elements N
    spacing_ratio: float
        Element spacing in units of the wavelength, d / λ.
        Only this ratio enters the array response.
    """

    n_elements: int
    spacing_ratio: float = 0.5

    def __post_init__(self):
        if int(self.n_elements) != self.n_elements or self.n_elements < 1:
            raise ConfigurationError(
                f"n_elements must be a positive integer, got {self.n_elements}"
            )
        if not self.spacing_ratio > 0:
            raise ConfigurationError(
                f"spacing_ratio must be > 0, got {self.spacing_ratio}"
            )


def element_positions(n):
    """Symmetric element indices {-(n-1)/2, ..., (n-1)/2}"""
    return np.arange(n) - (n - 1) / 2


def steering_vector(geometry, theta):
    """
    Array response of a uniform linear array.

    Parameters
    ----------
    geometry: ArrayGeometry
        The array
    theta: float or numpy.ndarray
        Angle(s) of the plane wave in radians.

    Returns
    -------
    a: numpy.ndarray[complex]
        Unit norm steering vector(s), shape ``np.shape(theta) + (N,)``
    """
    n = geometry.n_elements
    q = element_positions(n)
    phase = np.multiply.outer(np.sin(theta), q)
    return np.exp(-2j * np.pi * geometry.spacing_ratio * phase) / np.sqrt(n)


def virtual_angles(n):
    """
    Virtual angles ψ_ℓ = (ℓ - (n + 1) / 2) / n, ℓ = 0, ..., n - 1,
    one per DFT beam.
    """
    return (np.arange(n) - (n + 1) / 2) / n


def dft_matrix(n):
    """
    Unitary DFT matrix transforming an n-element array into beamspace.

    Row ℓ is the conjugated, normalized virtual steering vector of
    virtual angle ψ_ℓ, so that ``U @ x`` projects ``x`` onto the beams.

    Parameters
    ----------
    n: int
        Number of array elements

    Returns
    -------
    U: numpy.ndarray[complex], shape (n, n)
    """
    if int(n) != n or n < 1:
        raise ConfigurationError(f"DFT size must be a positive integer, got {n}")
    u = np.exp(-2j * np.pi * np.outer(virtual_angles(n), element_positions(n)))
    return u.conj() / np.sqrt(n)
