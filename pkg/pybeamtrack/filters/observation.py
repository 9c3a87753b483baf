"""
Observation models mapping tracked states to expected pilot observations
"""
import numpy as np

from ..channel import PARAMETERS_PER_PATH, dft_matrix
from ..channel.beamspace import _spatial_channel
from ..exceptions import ConfigurationError
from ..utils import split_complex


__all__ = [
    "ObservationModel",
    "beam_observation",
    "dl_observation",
    "ul_observation",
]


class ObservationModel:
    """
    Deterministic map from state vectors to real observation vectors.

    Complex observations are represented by their real parts
    followed by their imaginary parts.

    Attributes
    ----------
    func: callable
        Maps a single state vector of length m to an observation of length ``obs_dim``
    obs_dim: int
        Length of the observation vector
    noise_cov: numpy.ndarray, shape (obs_dim, obs_dim)
        Measurement noise covariance R
    """

    def __init__(self, func, obs_dim, noise_cov):
        self.func = func
        self.obs_dim = obs_dim
        self.noise_cov = np.atleast_2d(np.asanyarray(noise_cov, dtype=np.float64))
        if self.noise_cov.shape != (obs_dim, obs_dim):
            raise ConfigurationError(
                f"Noise covariance of shape {self.noise_cov.shape} does not"
                f" match observation dimension {obs_dim}"
            )

    def __call__(self, points):
        """
        Evaluate the model for one state (shape (m,)) or a stack
        of states (shape (n, m)).
        """
        points = np.asanyarray(points, dtype=np.float64)
        if points.ndim == 1:
            return np.asanyarray(self.func(points), dtype=np.float64)
        return np.array([self.func(p) for p in points], dtype=np.float64).reshape(
            len(points), self.obs_dim
        )


def _complex_noise_cov(noise_var, n_complex):
    # CN(0, σ²) splits into two real components of variance σ² / 2
    return np.eye(2 * n_complex) * noise_var / 2


def _selected_entry(rx_geometry, tx_geometry, rx_row, tx_row, state):
    """w^H U_r H(state) U_t^H p for one-hot w, p given as DFT rows"""
    blocks = np.reshape(state, (-1, PARAMETERS_PER_PATH))
    gains = blocks[:, 0] + 1j * blocks[:, 1]
    H = _spatial_channel(rx_geometry, tx_geometry, gains, blocks[:, 3], blocks[:, 2])
    return rx_row @ H @ tx_row.conj()


def beam_observation(combiner, precoder, rx_geometry, tx_geometry, noise_var, scale=1.0):
    """
    Observation of a single beamspace entry of one user's channel.

    g(x) = scale · w^H H_b(x) p, split into (real, imaginary).
    The state holds all paths of the user in contiguous blocks.

    Parameters
    ----------
    combiner: pybeamtrack.link.BeamSelector
        Selected receive beam
    precoder: pybeamtrack.link.BeamSelector
        Selected transmit beam
    rx_geometry, tx_geometry: pybeamtrack.channel.ArrayGeometry
        Receiving and transmitting arrays
    noise_var: float
        Complex noise variance σ_v²
    scale: float
        Constant factor, e.g. the path loss term 1 / sqrt(ρ_k)

    Returns
    -------
    model: ObservationModel
    """
    if combiner.length != rx_geometry.n_elements or precoder.length != tx_geometry.n_elements:
        raise ConfigurationError("Beam selectors do not conform to the array geometries")

    rx_row = dft_matrix(rx_geometry.n_elements)[combiner.index]
    tx_row = dft_matrix(tx_geometry.n_elements)[precoder.index]

    def func(state):
        entry = _selected_entry(rx_geometry, tx_geometry, rx_row, tx_row, state)
        return split_complex(scale * entry)

    return ObservationModel(func, 2, _complex_noise_cov(noise_var, 1))


def dl_observation(combiner, precoder, rx_geometry, tx_geometry, noise_var):
    """
    Downlink observation g_DL(x) = w_k^H H_b,k(x) p_k for a unit pilot.

    See `beam_observation` for the parameters.
    """
    return beam_observation(combiner, precoder, rx_geometry, tx_geometry, noise_var)


def ul_observation(combiners, precoders, path_loss, rx_geometry, tx_geometry, noise_var):
    """
    Uplink observation g_UL(x) = W^H H_b(x) P D of all users jointly.

    The joint state concatenates one single-path block per user.
    Entry j of the observation is the signal of user j plus the
    interference of all other users through the same combiner.

    Parameters
    ----------
    combiners: list[BeamSelector]
        Base station receive beam of each user
    precoders: list[BeamSelector]
        Transmit beam of each user
    path_loss: sequence[float]
        Average path loss ρ_k of each user
    rx_geometry: ArrayGeometry
        Base station array
    tx_geometry: ArrayGeometry
        User array
    noise_var: float
        Complex noise variance σ_v²

    Returns
    -------
    model: ObservationModel
        Observation of dimension 2 K
    """
    n_users = len(combiners)
    if len(precoders) != n_users or len(path_loss) != n_users:
        raise ConfigurationError(
            f"Need one precoder and path loss per user, got {len(precoders)}"
            f" and {len(path_loss)} for {n_users} combiners"
        )

    rx_dft = dft_matrix(rx_geometry.n_elements)
    tx_dft = dft_matrix(tx_geometry.n_elements)
    W = rx_dft[[w.index for w in combiners]]
    tx_rows = tx_dft[[p.index for p in precoders]]
    scale = 1 / np.sqrt(np.asanyarray(path_loss, dtype=np.float64))

    def func(state):
        users = np.reshape(state, (n_users, 1, PARAMETERS_PER_PATH))
        y = np.zeros(n_users, dtype=complex)
        for k, block in enumerate(users):
            gains = block[:, 0] + 1j * block[:, 1]
            H = _spatial_channel(rx_geometry, tx_geometry, gains, block[:, 3], block[:, 2])
            # column of H_b,k selected by user k's precoder, seen through all combiners
            y += W @ H @ tx_rows[k].conj() * scale[k]
        return split_complex(y)

    return ObservationModel(func, 2 * n_users, _complex_noise_cov(noise_var, n_users))
