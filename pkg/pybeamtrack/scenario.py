"""
Description of a tracking experiment
"""
from dataclasses import asdict, dataclass, field, fields, replace
import hashlib
import json

import astropy.units as u

from .channel import ArrayGeometry, EvolutionParams
from .exceptions import ConfigurationError
from .filters import UtParams, default_spread_grid
from .filters.unscented import DEFAULT_GAMMA_GRID, DEFAULT_KAPPA_GRID


__all__ = [
    "MODES",
    "FILTERS",
    "MODE_DEFAULTS",
    "ANGLE_UNITS",
    "ScenarioConfig",
]


MODES = ("DL", "UL")
FILTERS = ("ukf", "ekf", "both")
ANGLE_UNITS = ("deg", "rad")

#: Per-mode defaults, downlink and uplink simulation configurations
MODE_DEFAULTS = {
    "DL": dict(k_users=1, n_paths=1, sigma2=0.25**2, snr_db=20.0),
    "UL": dict(k_users=4, n_paths=1, sigma2=0.35**2, snr_db=0.0),
}

INTEGER_FIELDS = ("n_bs", "n_ue", "k_users", "n_paths", "n_slots", "n_runs", "seed")
FLOAT_FIELDS = (
    "carrier_frequency", "spacing_ratio", "sigma2", "rho", "snr_db",
    "beta", "fixed_gamma", "fixed_kappa",
)


@dataclass(frozen=True)
class ScenarioConfig:
    """
    Complete description of a Monte Carlo tracking experiment.

    Attributes
    ----------
    mode: str
        "DL" tracks the paths of user 0 at the user side,
        "UL" tracks all users jointly at the base station
    carrier_frequency: float
        Carrier frequency in Hz, recorded only
    n_bs: int
        Antenna elements at the base station
    n_ue: int
        Antenna elements at every user
    spacing_ratio: float
        Element spacing d / λ of all arrays
    k_users: int
        Number of users K
    n_paths: int
        Paths of the tracked user (DL) or of every user (UL, must be 1)
    sigma2: float
        Per-slot variance of AoA and AoD increments in ``angle_unit``²
    angle_unit: str
        "deg" or "rad", unit of the angle increments behind ``sigma2``.
        The filters and error metrics always work in radians.
    rho: float
        Fading correlation of the channel gains
    snr_db: float
        SNR of the selected beam at the first slot
    n_slots: int
        Tracking slots per episode
    n_runs: int
        Monte Carlo episodes
    seed: int
        Master seed, episode seeds are derived from it
    filter: str
        "ukf", "ekf" or "both"
    gamma_grid, kappa_grid: tuple[float]
        Candidates of the first slot spread optimization
    beta: float
        UT prior parameter β
    optimize_spread: bool
        If False, the UKF uses ``fixed_gamma`` and ``fixed_kappa``
    fixed_gamma, fixed_kappa: float
        Spreading parameters without optimization
    path_loss: tuple[float]
        Uplink path loss ρ_k of every user, empty means 1 for all
    """

    mode: str = "DL"
    carrier_frequency: float = 28e9
    n_bs: int = 16
    n_ue: int = 8
    spacing_ratio: float = 0.5
    k_users: int = MODE_DEFAULTS["DL"]["k_users"]
    n_paths: int = MODE_DEFAULTS["DL"]["n_paths"]
    sigma2: float = MODE_DEFAULTS["DL"]["sigma2"]
    angle_unit: str = "deg"
    rho: float = 0.99
    snr_db: float = MODE_DEFAULTS["DL"]["snr_db"]
    n_slots: int = 20
    n_runs: int = 1000
    seed: int = 0
    filter: str = "both"
    gamma_grid: tuple = DEFAULT_GAMMA_GRID
    kappa_grid: tuple = DEFAULT_KAPPA_GRID
    beta: float = 2.0
    optimize_spread: bool = True
    fixed_gamma: float = 1.0
    fixed_kappa: float = 0.0
    path_loss: tuple = field(default=())

    def __post_init__(self):
        for name in INTEGER_FIELDS:
            value = getattr(self, name)
            if isinstance(value, float) and value.is_integer():
                object.__setattr__(self, name, int(value))
        for name in FLOAT_FIELDS:
            value = getattr(self, name)
            if isinstance(value, int) and not isinstance(value, bool):
                object.__setattr__(self, name, float(value))

        object.__setattr__(self, "mode", str(self.mode).upper())
        object.__setattr__(self, "filter", str(self.filter).lower())
        object.__setattr__(self, "angle_unit", str(self.angle_unit).lower())
        for name in ("gamma_grid", "kappa_grid", "path_loss"):
            try:
                values = tuple(float(v) for v in getattr(self, name))
            except (TypeError, ValueError):
                raise ConfigurationError(
                    f"{name} must be a list of numbers, got {getattr(self, name)!r}"
                ) from None
            object.__setattr__(self, name, values)
        self.validate()

    @classmethod
    def for_mode(cls, mode="DL", **kwargs):
        """Create a config with the defaults of ``mode``, updated by ``kwargs``"""
        mode = str(mode).upper()
        if mode not in MODES:
            raise ConfigurationError(f"mode must be one of {MODES}, got {mode!r}")
        values = dict(MODE_DEFAULTS[mode])
        values.update(kwargs)
        return cls(mode=mode, **values)

    @classmethod
    def field_names(cls):
        return tuple(f.name for f in fields(cls))

    def validate(self):
        """Raise a `~pybeamtrack.exceptions.ConfigurationError` naming the first invalid field"""
        if self.mode not in MODES:
            raise ConfigurationError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.filter not in FILTERS:
            raise ConfigurationError(f"filter must be one of {FILTERS}, got {self.filter!r}")
        if self.angle_unit not in ANGLE_UNITS:
            raise ConfigurationError(
                f"angle_unit must be one of {ANGLE_UNITS}, got {self.angle_unit!r}"
            )

        for name in INTEGER_FIELDS:
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigurationError(f"{name} must be an integer, got {value!r}")
            if name != "seed" and value < 1:
                raise ConfigurationError(f"{name} must be a positive integer, got {value}")

        for name in FLOAT_FIELDS:
            if not isinstance(getattr(self, name), float):
                raise ConfigurationError(f"{name} must be a number, got {getattr(self, name)!r}")

        if not isinstance(self.optimize_spread, bool):
            raise ConfigurationError(
                f"optimize_spread must be true or false, got {self.optimize_spread!r}"
            )

        for name in ("carrier_frequency", "spacing_ratio"):
            if not getattr(self, name) > 0:
                raise ConfigurationError(f"{name} must be > 0, got {getattr(self, name)}")

        if not self.sigma2 >= 0:
            raise ConfigurationError(f"sigma2 must be >= 0, got {self.sigma2}")
        if not 0 < self.rho <= 1:
            raise ConfigurationError(f"rho must be in (0, 1], got {self.rho}")
        if self.seed < 0:
            raise ConfigurationError(f"seed must be a non-negative integer, got {self.seed}")

        if self.mode == "UL" and self.n_paths != 1:
            raise ConfigurationError(
                f"n_paths must be 1 in the uplink, got {self.n_paths}"
            )

        if self.path_loss and len(self.path_loss) != self.k_users:
            raise ConfigurationError(
                f"path_loss needs {self.k_users} entries, got {len(self.path_loss)}"
            )
        if any(p <= 0 for p in self.path_loss):
            raise ConfigurationError(f"path_loss entries must be > 0, got {self.path_loss}")

        if self.optimize_spread:
            if not self.gamma_grid or not self.kappa_grid:
                raise ConfigurationError("gamma_grid and kappa_grid must not be empty")
            if any(not 0 < g <= 1 for g in self.gamma_grid):
                raise ConfigurationError(f"gamma_grid entries must be in (0, 1], got {self.gamma_grid}")
            if any(k < 0 for k in self.kappa_grid):
                raise ConfigurationError(f"kappa_grid entries must be >= 0, got {self.kappa_grid}")
        else:
            if not 0 < self.fixed_gamma <= 1:
                raise ConfigurationError(f"fixed_gamma must be in (0, 1], got {self.fixed_gamma}")
            if self.fixed_kappa < 0:
                raise ConfigurationError(f"fixed_kappa must be >= 0, got {self.fixed_kappa}")

    def replace(self, **changes):
        return replace(self, **changes)

    @property
    def filters(self):
        """Names of the filters run by this scenario"""
        if self.filter == "both":
            return ("ukf", "ekf")
        return (self.filter,)

    @property
    def bs_geometry(self):
        return ArrayGeometry(self.n_bs, self.spacing_ratio)

    @property
    def ue_geometry(self):
        return ArrayGeometry(self.n_ue, self.spacing_ratio)

    @property
    def rx_geometry(self):
        """Receiving array, the user in the downlink and the base station in the uplink"""
        return self.ue_geometry if self.mode == "DL" else self.bs_geometry

    @property
    def tx_geometry(self):
        return self.bs_geometry if self.mode == "DL" else self.ue_geometry

    @property
    def sigma2_rad(self):
        """Per-slot angle increment variance in rad²"""
        return (self.sigma2 * u.Unit(self.angle_unit) ** 2).to_value(u.rad**2)

    @property
    def evolution(self):
        sigma2 = self.sigma2_rad
        return EvolutionParams(rho=self.rho, sigma2_a=sigma2, sigma2_d=sigma2)

    @property
    def resolved_path_loss(self):
        return self.path_loss or (1.0,) * self.k_users

    @property
    def tracked_paths(self):
        """Number of paths whose parameters are tracked"""
        return self.n_paths if self.mode == "DL" else self.k_users

    def spread_grid(self):
        """Candidates of the spread optimization"""
        return default_spread_grid(self.beta, self.gamma_grid, self.kappa_grid)

    def fixed_spread(self):
        """Spreading parameters used without optimization, None otherwise"""
        if self.optimize_spread:
            return None
        return UtParams(self.fixed_gamma, self.fixed_kappa, self.beta)

    def to_dict(self):
        return asdict(self)

    def config_hash(self):
        """Stable short hash of all fields"""
        text = json.dumps(self.to_dict(), sort_keys=True)
        return hashlib.sha256(text.encode()).hexdigest()[:16]
