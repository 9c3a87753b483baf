"""
Beam selection and noisy pilot observations in the downlink and uplink
"""
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import block_diag

from .exceptions import ConfigurationError, DegenerateChannelError
from .utils import complex_normal


__all__ = [
    "BeamSelector",
    "LinkConfig",
    "select_beams",
    "dl_received",
    "ul_received",
    "reference_power",
    "snr_to_noise_var",
]


@dataclass(frozen=True)
class BeamSelector:
    """
    Switch-based selection of a single beam out of ``length`` beams.
    """

    index: int
    length: int

    def __post_init__(self):
        if self.length < 1 or not 0 <= self.index < self.length:
            raise ConfigurationError(
                f"Beam index {self.index} out of range for {self.length} beams"
            )

    @property
    def vector(self):
        """One-hot realization of the selector"""
        v = np.zeros(self.length)
        v[self.index] = 1.0
        return v


@dataclass(frozen=True)
class LinkConfig:
    """
    Parameters shared by all pilot observations of an episode.

    Attributes
    ----------
    n_users: int
        Number of users K
    noise_var: float
        Total complex noise variance σ_v² per receive element
    path_loss: tuple[float]
        Average path loss ρ_k of each user, only used in the uplink
    pilots: tuple[complex]
        Unit magnitude pilot symbol of each user
    """

    n_users: int
    noise_var: float
    path_loss: tuple = field(default=None)
    pilots: tuple = field(default=None)

    def __post_init__(self):
        if self.n_users < 1:
            raise ConfigurationError(f"n_users must be >= 1, got {self.n_users}")
        if self.noise_var < 0:
            raise ConfigurationError(f"noise_var must be >= 0, got {self.noise_var}")

        if self.path_loss is None:
            object.__setattr__(self, "path_loss", (1.0,) * self.n_users)
        if self.pilots is None:
            object.__setattr__(self, "pilots", (1.0 + 0j,) * self.n_users)

        object.__setattr__(self, "path_loss", tuple(self.path_loss))
        object.__setattr__(self, "pilots", tuple(complex(s) for s in self.pilots))

        if len(self.path_loss) != self.n_users or len(self.pilots) != self.n_users:
            raise ConfigurationError(
                f"Need one path loss and one pilot per user ({self.n_users}), got"
                f" {len(self.path_loss)} and {len(self.pilots)}"
            )
        if any(rho <= 0 for rho in self.path_loss):
            raise ConfigurationError(f"path_loss must be > 0, got {self.path_loss}")
        if not np.allclose(np.abs(self.pilots), 1.0):
            raise ConfigurationError("Pilot symbols must have unit magnitude")


def select_beams(channel):
    """
    Select the receive and transmit beam of the strongest beamspace entry.

    Ties are resolved towards the smallest row, then the smallest column index.

    Parameters
    ----------
    channel: pybeamtrack.channel.BeamspaceChannel

    Returns
    -------
    rx: BeamSelector
        Selected receive beam (row)
    tx: BeamSelector
        Selected transmit beam (column)
    """
    magnitude = np.abs(channel.entries)
    if not np.any(magnitude > 0):
        raise DegenerateChannelError(magnitude.shape)

    # argmax returns the first maximum in row-major order
    row, col = np.unravel_index(np.argmax(magnitude), magnitude.shape)
    n_rows, n_cols = magnitude.shape
    return BeamSelector(int(row), n_rows), BeamSelector(int(col), n_cols)


def dl_received(user, channels, precoders, combiner, config, rng):
    """
    Noisy downlink pilot received by ``user``.

    y = w^H H_b,k p_k s_k + Σ_{i≠k} w^H H_b,k p_i s_i + w^H v

    The interference of the other users' precoders passes through the
    channel of ``user`` itself.

    Parameters
    ----------
    user: int
        Index k of the receiving user
    channels: list[BeamspaceChannel]
        Beamspace channels of all users
    precoders: list[BeamSelector]
        Transmit beam selected for each user
    combiner: BeamSelector
        Receive beam of ``user``
    config: LinkConfig
    rng: numpy.random.Generator

    Returns
    -------
    y: complex
    """
    if not 0 <= user < config.n_users:
        raise ConfigurationError(f"User index {user} out of range")
    if len(precoders) != config.n_users:
        raise ConfigurationError(
            f"Need {config.n_users} precoders, got {len(precoders)}"
        )

    H = channels[user].entries
    n_rx, n_tx = H.shape
    if combiner.length != n_rx or any(p.length != n_tx for p in precoders):
        raise ConfigurationError(
            f"Beam selectors do not conform to channel of shape {H.shape}"
        )

    row = H[combiner.index]
    signal = sum(row[p.index] * s for p, s in zip(precoders, config.pilots))
    noise = complex_normal(rng, n_rx, config.noise_var)
    return complex(signal + noise[combiner.index])


def ul_received(channels, combiners, precoders, config, rng):
    """
    Noisy uplink pilots of all users received at the base station.

    y = W^H H_b P D s + W^H v

    where H_b = [H_b,1, ..., H_b,K], P is block diagonal over the users'
    precoders and D = diag(1 / sqrt(ρ_k)).

    Parameters
    ----------
    channels: list[BeamspaceChannel]
        Beamspace channel of each user, all with the base station as receiver
    combiners: list[BeamSelector]
        Receive beam of the base station for each user
    precoders: list[BeamSelector]
        Transmit beam of each user
    config: LinkConfig
    rng: numpy.random.Generator

    Returns
    -------
    y: numpy.ndarray[complex], shape (K,)
    """
    k = config.n_users
    if not len(channels) == len(combiners) == len(precoders) == k:
        raise ConfigurationError(
            f"Need {k} channels, combiners and precoders, got"
            f" {len(channels)}, {len(combiners)} and {len(precoders)}"
        )

    n_rx = channels[0].shape[0]
    if any(c.shape[0] != n_rx for c in channels):
        raise ConfigurationError("All uplink channels need the same receive array")
    if any(w.length != n_rx for w in combiners):
        raise ConfigurationError("Combiners do not conform to the receive array")
    if any(p.length != c.shape[1] for p, c in zip(precoders, channels)):
        raise ConfigurationError("Precoders do not conform to the user arrays")

    W = np.column_stack([w.vector for w in combiners])
    H = np.hstack([c.entries for c in channels])
    P = block_diag(*[p.vector[:, np.newaxis] for p in precoders])
    D = np.diag(1 / np.sqrt(config.path_loss))
    s = np.array(config.pilots)

    noise = complex_normal(rng, n_rx, config.noise_var)
    return W.conj().T @ H @ P @ D @ s + W.conj().T @ noise


def reference_power(n_t, n_r, n_paths):
    """
    Mean received pilot power of the selected beam at the first slot,
    N_t N_r / L for unit variance gains.
    """
    return n_t * n_r / n_paths


def snr_to_noise_var(snr_db, ref_power):
    """
    Noise variance achieving ``snr_db`` relative to ``ref_power``.

    Parameters
    ----------
    snr_db: float
        Signal to noise ratio in dB
    ref_power: float
        Reference signal power, see `reference_power`

    Returns
    -------
    noise_var: float
    """
    if not ref_power > 0:
        raise ConfigurationError(f"ref_power must be > 0, got {ref_power}")
    return ref_power * 10 ** (-snr_db / 10)
