"""
Per-path channel parameters and their stochastic evolution between slots
"""
from dataclasses import dataclass

import numpy as np

from ..exceptions import ConfigurationError
from ..utils import complex_normal


__all__ = [
    "PARAMETERS_PER_PATH",
    "PathState",
    "UserChannel",
    "EvolutionParams",
    "random_user_channel",
    "evolve",
    "process_noise_cov",
    "transition_matrix",
]


#: Layout of the per-path block of every state vector
STATE_LAYOUT = ("alpha_re", "alpha_im", "theta_d", "theta_a")
PARAMETERS_PER_PATH = len(STATE_LAYOUT)


@dataclass(frozen=True)
class PathState:
    """
    Tracked parameters of a single propagation path.

    Angles are in radians and never wrapped.
    """

    alpha_re: float
    alpha_im: float
    theta_a: float
    theta_d: float

    def __post_init__(self):
        if not np.all(np.isfinite(self.as_vector())):
            raise ConfigurationError(f"Path parameters must be finite, got {self}")

    @property
    def alpha(self):
        return complex(self.alpha_re, self.alpha_im)

    def as_vector(self):
        """Per-path state block (α_re, α_im, θ_D, θ_A)"""
        return np.array([self.alpha_re, self.alpha_im, self.theta_d, self.theta_a])

    @classmethod
    def from_vector(cls, vector):
        alpha_re, alpha_im, theta_d, theta_a = (float(v) for v in vector)
        return cls(alpha_re=alpha_re, alpha_im=alpha_im, theta_a=theta_a, theta_d=theta_d)


@dataclass(frozen=True)
class UserChannel:
    """
    All resolvable paths between one user and the base station.
    """

    paths: tuple

    def __post_init__(self):
        object.__setattr__(self, "paths", tuple(self.paths))
        if len(self.paths) < 1:
            raise ConfigurationError("A user channel needs at least one path")

    def __len__(self):
        return len(self.paths)

    @property
    def n_paths(self):
        return len(self.paths)

    @property
    def gains(self):
        return np.array([p.alpha for p in self.paths])

    @property
    def aoa(self):
        return np.array([p.theta_a for p in self.paths])

    @property
    def aod(self):
        return np.array([p.theta_d for p in self.paths])

    def as_vector(self):
        """State vector with contiguous per-path blocks"""
        return np.concatenate([p.as_vector() for p in self.paths])

    @classmethod
    def from_vector(cls, vector):
        blocks = np.reshape(vector, (-1, PARAMETERS_PER_PATH))
        return cls(tuple(PathState.from_vector(block) for block in blocks))


@dataclass(frozen=True)
class EvolutionParams:
    """
    Parameters of the slot-to-slot channel evolution.

    Attributes
    ----------
    rho: float
        Fading correlation of the first-order Gauss-Markov gain model
    sigma2_a: float
        Variance of the AoA random walk increment per slot in rad²
    sigma2_d: float
        Variance of the AoD random walk increment per slot in rad²
    """

    rho: float
    sigma2_a: float
    sigma2_d: float

    def __post_init__(self):
        if not 0 < self.rho <= 1:
            raise ConfigurationError(f"rho must be in (0, 1], got {self.rho}")
        if self.sigma2_a < 0 or self.sigma2_d < 0:
            raise ConfigurationError(
                "Angle variances must be non-negative,"
                f" got sigma2_a={self.sigma2_a}, sigma2_d={self.sigma2_d}"
            )

    @property
    def gain_innovation_var(self):
        """Total complex variance 1 - ρ² of the gain innovation"""
        return 1 - self.rho**2

    def path_noise_variances(self):
        """Per-path diagonal of the process noise, in state layout order"""
        half = self.gain_innovation_var / 2
        return np.array([half, half, self.sigma2_d, self.sigma2_a])


def random_user_channel(n_paths, rng):
    """
    Draw an initial user channel.

    Angles are uniform in (0, π), gains standard complex normal.

    Parameters
    ----------
    n_paths: int
        Number of paths
    rng: numpy.random.Generator

    Returns
    -------
    channel: UserChannel
    """
    gains = complex_normal(rng, n_paths)
    aoa = rng.uniform(0, np.pi, n_paths)
    aod = rng.uniform(0, np.pi, n_paths)
    return UserChannel(tuple(
        PathState(alpha_re=g.real, alpha_im=g.imag, theta_a=a, theta_d=d)
        for g, a, d in zip(gains, aoa, aod)
    ))


def evolve(channel, params, rng):
    """
    Advance a channel by one slot.

    α ← ρ α + ζ with ζ ~ CN(0, 1 - ρ²),
    θ_A ← θ_A + ξ_A with ξ_A ~ N(0, σ²_A), θ_D analogous.

    All draws are independent across paths and parameters.

    Parameters
    ----------
    channel: UserChannel
    params: EvolutionParams
    rng: numpy.random.Generator

    Returns
    -------
    channel: UserChannel
        The channel in the next slot
    """
    state = channel.as_vector().reshape(-1, PARAMETERS_PER_PATH)
    scale = np.sqrt(params.path_noise_variances())
    noise = rng.standard_normal(state.shape) * scale

    coefficients = np.array([params.rho, params.rho, 1.0, 1.0])
    return UserChannel.from_vector(coefficients * state + noise)


def process_noise_cov(params, n_paths):
    """
    Covariance Q of the process noise of ``n_paths`` stacked paths.

    Parameters
    ----------
    params: EvolutionParams
    n_paths: int

    Returns
    -------
    Q: numpy.ndarray, shape (4 n_paths, 4 n_paths)
        Diagonal matrix with the per-path pattern repeated
    """
    return np.diag(np.tile(params.path_noise_variances(), n_paths))


def transition_matrix(params, n_paths):
    """
    Deterministic part of the state evolution,
    ρ on the gain entries and 1 on the angle entries of every path.
    """
    return np.diag(np.tile([params.rho, params.rho, 1.0, 1.0], n_paths))
