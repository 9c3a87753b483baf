"""
Geometric narrowband channel and its beamspace representation
"""
from dataclasses import dataclass

import numpy as np

from ..exceptions import ConfigurationError
from .array import dft_matrix, element_positions, steering_vector


__all__ = [
    "BeamspaceChannel",
    "spatial_channel",
    "beamspace_transform",
    "user_beamspace_channel",
    "dirichlet",
    "beamspace_element",
]


#: Below this magnitude of sin(πφ), `dirichlet` is evaluated by its limit
DIRICHLET_SINGULARITY_THRESHOLD = 1e-12


@dataclass(frozen=True)
class BeamspaceChannel:
    """
    A channel matrix in the beam domain, rows index receive beams,
    columns index transmit beams.
    """

    entries: np.ndarray

    @property
    def shape(self):
        return self.entries.shape

    @property
    def power(self):
        """Squared Frobenius norm"""
        return float(np.sum(np.abs(self.entries) ** 2))


def spatial_channel(rx_geometry, tx_geometry, channel):
    """
    Spatial channel matrix of a sum of plane-wave paths.

    H = sqrt(N_t N_r / L) Σ_l α_l a_r(θ_A,l) a_t(θ_D,l)^H

    Parameters
    ----------
    rx_geometry: ArrayGeometry
        Receiving array, indexes the rows
    tx_geometry: ArrayGeometry
        Transmitting array, indexes the columns
    channel: pybeamtrack.channel.UserChannel
        The propagation paths

    Returns
    -------
    H: numpy.ndarray[complex], shape (N_r, N_t)
    """
    return _spatial_channel(
        rx_geometry, tx_geometry, channel.gains, channel.aoa, channel.aod
    )


def _spatial_channel(rx_geometry, tx_geometry, gains, aoa, aod):
    n_paths = len(gains)
    scale = np.sqrt(rx_geometry.n_elements * tx_geometry.n_elements / n_paths)
    a_rx = steering_vector(rx_geometry, aoa)
    a_tx = steering_vector(tx_geometry, aod)
    return scale * np.einsum("l,lr,lt->rt", gains, a_rx, a_tx.conj())


def beamspace_transform(H, rx_dft, tx_dft):
    """
    Transform a spatial channel into beamspace, H_b = U_r H U_t^H.

    Parameters
    ----------
    H: numpy.ndarray[complex], shape (N_r, N_t)
        Spatial channel
    rx_dft: numpy.ndarray[complex], shape (N_r, N_r)
        Unitary DFT matrix of the receiving array
    tx_dft: numpy.ndarray[complex], shape (N_t, N_t)
        Unitary DFT matrix of the transmitting array

    Returns
    -------
    channel: BeamspaceChannel
    """
    H = np.asanyarray(H)
    if H.ndim != 2:
        raise ConfigurationError(f"Channel must be a matrix, got shape {H.shape}")

    n_r, n_t = H.shape
    if rx_dft.shape != (n_r, n_r) or tx_dft.shape != (n_t, n_t):
        raise ConfigurationError(
            f"Cannot transform channel of shape {H.shape} with DFT matrices"
            f" of shapes {rx_dft.shape} and {tx_dft.shape}"
        )

    return BeamspaceChannel(rx_dft @ H @ tx_dft.conj().T)


def user_beamspace_channel(rx_geometry, tx_geometry, channel, rx_dft=None, tx_dft=None):
    """
    Convenience wrapper combining `spatial_channel` and `beamspace_transform`.

    DFT matrices are created from the geometries if not given.
    """
    if rx_dft is None:
        rx_dft = dft_matrix(rx_geometry.n_elements)
    if tx_dft is None:
        tx_dft = dft_matrix(tx_geometry.n_elements)

    H = spatial_channel(rx_geometry, tx_geometry, channel)
    return beamspace_transform(H, rx_dft, tx_dft)


def dirichlet(n, phi):
    """
    Dirichlet sinc function sin(π n φ) / sin(π φ).

    At integer φ the removable singularity is replaced by its limit
    n (-1)^(φ (n - 1)), so the maximum n is reached at φ = 0.

    Parameters
    ----------
    n: int
        Order, e.g. the number of array elements
    phi: float or numpy.ndarray

    Returns
    -------
    value: float or numpy.ndarray
    """
    phi = np.asanyarray(phi, dtype=np.float64)
    denominator = np.sin(np.pi * phi)
    singular = np.abs(denominator) < DIRICHLET_SINGULARITY_THRESHOLD

    with np.errstate(divide="ignore", invalid="ignore"):
        value = np.sin(np.pi * n * phi) / denominator

    k = np.round(phi)
    limit = n * np.where(np.mod(k * (n - 1), 2) == 0, 1.0, -1.0)
    value = np.where(singular, limit, value)

    if value.ndim == 0:
        return float(value)
    return value


def beamspace_element(phi_a, phi_d, psi_t, psi_r, n_t, n_r):
    """
    Closed form of one entry of the beamspace response of a single path.

    Returns N_t N_r [U_r a(θ_A) a^H(θ_D) U_t^H]_{v,c} for
    φ_A = (d / λ) sin θ_A, φ_D = (d / λ) sin θ_D and the virtual angles
    ψ_{r,v}, ψ_{t,c} of the selected receive and transmit beams.

    The receive side contributes a Dirichlet sinc, the transmit side a
    phase-shifted sum over the transmit element indices q:

        Σ_q exp(-j 2π (ψ_t - φ_D) q) · dirichlet(N_r, φ_A - ψ_r)

    Parameters
    ----------
    phi_a, phi_d: float
        Normalized spatial frequencies of arrival and departure
    psi_t, psi_r: float
        Virtual angles of the transmit and receive beams
    n_t, n_r: int
        Number of transmit and receive elements

    Returns
    -------
    value: complex
    """
    q = element_positions(n_t)
    phase_sum = np.sum(np.exp(-2j * np.pi * (psi_t - phi_d) * q))
    return complex(phase_sum * dirichlet(n_r, phi_a - psi_r))
