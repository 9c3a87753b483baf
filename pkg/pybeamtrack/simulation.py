"""
Monte Carlo simulation of beam and channel tracking episodes
"""
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
import hashlib
import logging
import os

import numpy as np
from astropy.table import QTable
from tqdm import tqdm

from .channel import (
    PARAMETERS_PER_PATH,
    beamspace_transform,
    dft_matrix,
    evolve,
    process_noise_cov,
    random_user_channel,
    spatial_channel,
    transition_matrix,
)
from .exceptions import AllRunsFailedError, ConfigurationError, InvalidInputError, NumericalError
from .filters import (
    ExtendedKalmanFilter,
    FilterState,
    LinearTransition,
    UnscentedKalmanFilter,
    beam_observation,
    dl_observation,
    ul_observation,
)
from .link import (
    LinkConfig,
    dl_received,
    reference_power,
    select_beams,
    snr_to_noise_var,
    ul_received,
)
from .statistics import enhancement, mean_squared_error, standard_error
from .utils import split_complex


__all__ = [
    "PARAMETERS",
    "RunResult",
    "MonteCarloResult",
    "Comparison",
    "episode_seed",
    "scenario_noise_var",
    "run_episode",
    "angle_mse",
    "channel_mse",
    "mse_table",
    "monte_carlo",
    "compare_filters",
    "random_walk_mse",
    "sweep",
]


log = logging.getLogger(__name__)

#: Squared error components recorded per tracked path
PARAMETERS = ("aoa", "aod", "gain")


@dataclass
class RunResult:
    """
    Outcome of a single tracking episode.

    Attributes
    ----------
    run_index: int
        Index of the episode in its Monte Carlo run
    seed: int
        Seed of the episode's random stream
    config_hash: str
        `~pybeamtrack.scenario.ScenarioConfig.config_hash` of the scenario
    true_states: numpy.ndarray, shape (n_slots, 4 n_tracked)
        True parameters of the tracked paths at every slot
    tracked_states: dict[str, numpy.ndarray]
        Filter means per filter name, same shape as ``true_states``
    squared_errors: dict[str, numpy.ndarray]
        Per filter, shape (n_slots, n_tracked, 3) with the squared
        AoA, AoD and gain errors of every tracked path
    spread: tuple or None
        (γ, κ) used by the UKF
    failed: bool
        True if a filter broke down numerically
    failure: str
        Description of the failure
    truth_digest: str
        Hash of the true trajectory and all observations
    """

    run_index: int
    seed: int
    config_hash: str
    true_states: np.ndarray
    tracked_states: dict = field(default_factory=dict)
    squared_errors: dict = field(default_factory=dict)
    spread: tuple = None
    failed: bool = False
    failure: str = ""
    truth_digest: str = ""

    @property
    def n_slots(self):
        return len(self.true_states)


def episode_seed(master_seed, run_index):
    """
    Seed of episode ``run_index``, independent of the order in which
    episodes are executed.
    """
    sequence = np.random.SeedSequence([master_seed, run_index])
    return int(sequence.generate_state(1, np.uint64)[0])


def scenario_noise_var(config):
    """
    Noise variance of a scenario, relative to the reference power
    N_t N_r / L of the tracked user's selected beam.
    """
    ref_power = reference_power(
        config.tx_geometry.n_elements, config.rx_geometry.n_elements, config.n_paths
    )
    return snr_to_noise_var(config.snr_db, ref_power)


def _squared_errors(tracked, truth):
    estimate = np.reshape(tracked, (-1, PARAMETERS_PER_PATH))
    true = np.reshape(truth, (-1, PARAMETERS_PER_PATH))
    diff = estimate - true
    gain = diff[:, 0] ** 2 + diff[:, 1] ** 2
    # state layout is (α_re, α_im, θ_D, θ_A)
    return np.column_stack([diff[:, 3] ** 2, diff[:, 2] ** 2, gain])


class _Episode:
    """Channels, beams and filters of one episode"""

    def __init__(self, config, rng):
        self.config = config
        self.rng = rng
        self.rx = config.rx_geometry
        self.tx = config.tx_geometry
        self.rx_dft = dft_matrix(self.rx.n_elements)
        self.tx_dft = dft_matrix(self.tx.n_elements)
        self.evolution = config.evolution

        k = config.k_users
        if config.mode == "DL":
            # only the receiving user 0 may have multiple paths
            n_paths = [config.n_paths] + [1] * (k - 1)
        else:
            n_paths = [1] * k

        self.channels = [random_user_channel(n, rng) for n in n_paths]
        beams = [select_beams(b) for b in self.beamspace()]
        self.combiners = [rx for rx, _ in beams]
        self.precoders = [tx for _, tx in beams]

        self.noise_var = scenario_noise_var(config)
        self.link = LinkConfig(k, self.noise_var, path_loss=config.resolved_path_loss)
        self.filters = self._create_filters()

    @property
    def tracked_channels(self):
        if self.config.mode == "DL":
            return self.channels[:1]
        return self.channels

    def truth(self):
        return np.concatenate([c.as_vector() for c in self.tracked_channels])

    def beamspace(self):
        return [
            beamspace_transform(spatial_channel(self.rx, self.tx, c), self.rx_dft, self.tx_dft)
            for c in self.channels
        ]

    def _initial_state(self, vector, n_paths):
        Q = process_noise_cov(self.evolution, n_paths)
        transition = LinearTransition(transition_matrix(self.evolution, n_paths))
        return FilterState(vector, Q), transition, Q

    def _create_filters(self):
        config = self.config
        n_tracked = config.tracked_paths
        state, transition, Q = self._initial_state(self.truth(), n_tracked)

        if config.mode == "DL":
            model = dl_observation(
                self.combiners[0], self.precoders[0], self.rx, self.tx, self.noise_var
            )
        else:
            model = ul_observation(
                self.combiners, self.precoders, self.link.path_loss,
                self.rx, self.tx, self.noise_var,
            )

        filters = {}
        if "ukf" in config.filters:
            filters["ukf"] = [UnscentedKalmanFilter(
                state, transition, Q, model,
                params=config.fixed_spread(),
                spread_grid=config.spread_grid(),
            )]

        if "ekf" in config.filters:
            if config.mode == "DL":
                filters["ekf"] = [ExtendedKalmanFilter(state, transition, Q, model)]
            else:
                # one filter per user, blind to the other users' interference
                filters["ekf"] = []
                for k, channel in enumerate(self.channels):
                    user_state, user_transition, user_Q = self._initial_state(
                        channel.as_vector(), 1
                    )
                    user_model = beam_observation(
                        self.combiners[k], self.precoders[k], self.rx, self.tx,
                        self.noise_var, scale=1 / np.sqrt(self.link.path_loss[k]),
                    )
                    filters["ekf"].append(
                        ExtendedKalmanFilter(user_state, user_transition, user_Q, user_model)
                    )
        return filters

    def observe(self):
        """Evolve the channels by one slot and return the new pilot observation"""
        self.channels = [evolve(c, self.evolution, self.rng) for c in self.channels]
        beamspace = self.beamspace()

        if self.config.mode == "DL":
            y = dl_received(0, beamspace, self.precoders, self.combiners[0], self.link, self.rng)
        else:
            y = ul_received(beamspace, self.combiners, self.precoders, self.link, self.rng)
        return np.atleast_1d(y)

    def step_filters(self, y):
        """Feed observation ``y`` to all filters, return their stacked means"""
        means = {}
        for name, filters in self.filters.items():
            if len(filters) == 1:
                means[name] = filters[0].step(split_complex(y)).mean
            else:
                means[name] = np.concatenate([
                    f.step(split_complex(y[k])).mean for k, f in enumerate(filters)
                ])
        return means


def run_episode(config, seed, run_index=0):
    """
    Simulate one tracking episode.

    The initial channels are drawn, beams are selected on the strongest
    beamspace entries and the filters start from the true parameters.
    In every slot the channels evolve, a pilot is observed and every
    enabled filter steps once. All filters see the same realizations.

    Parameters
    ----------
    config: pybeamtrack.scenario.ScenarioConfig
    seed: int
        Seed of the episode's random stream
    run_index: int
        Index recorded in the result

    Returns
    -------
    result: RunResult
    """
    rng = np.random.default_rng(seed)
    episode = _Episode(config, rng)

    n_slots = config.n_slots
    m = episode.truth().size
    true_states = np.full((n_slots, m), np.nan)
    tracked = {name: np.full((n_slots, m), np.nan) for name in episode.filters}
    errors = {
        name: np.full((n_slots, config.tracked_paths, len(PARAMETERS)), np.nan)
        for name in episode.filters
    }
    digest = hashlib.sha256()

    result = RunResult(
        run_index=run_index,
        seed=seed,
        config_hash=config.config_hash(),
        true_states=true_states,
        tracked_states=tracked,
        squared_errors=errors,
    )

    for slot in range(n_slots):
        y = episode.observe()
        truth = episode.truth()
        true_states[slot] = truth
        digest.update(truth.tobytes())
        digest.update(y.tobytes())

        try:
            means = episode.step_filters(y)
        except NumericalError as e:
            log.warning("Run %d failed: %s", run_index, e)
            result.failed = True
            result.failure = str(e)
            break

        for name, mean in means.items():
            tracked[name][slot] = mean
            errors[name][slot] = _squared_errors(mean, truth)

    if "ukf" in episode.filters:
        params = episode.filters["ukf"][0].params
        if params is not None:
            result.spread = (params.gamma, params.kappa)
            log.debug("Run %d used gamma=%.2f, kappa=%.2f", run_index, *result.spread)

    result.truth_digest = digest.hexdigest()
    return result


def _successful(results):
    successful = [r for r in results if not r.failed]
    if len(successful) == 0:
        raise InvalidInputError("Need at least one successful run")
    return successful


def _per_run(results, filter_name, parameter, paths=slice(None)):
    """Squared errors of shape (n_runs, n_slots), averaged over ``paths``"""
    column = PARAMETERS.index(parameter)
    return np.array([
        r.squared_errors[filter_name][:, paths, column].mean(axis=1) for r in results
    ])


def angle_mse(results, filter_name="ukf"):
    """
    Per-slot mean squared angle errors over successful runs.

    Parameters
    ----------
    results: list[RunResult]
    filter_name: str

    Returns
    -------
    mse: dict[str, numpy.ndarray]
        ``"aoa"`` and ``"aod"`` MSE per slot, averaged over the tracked paths
    """
    successful = _successful(results)
    return {
        parameter: mean_squared_error(_per_run(successful, filter_name, parameter))
        for parameter in ("aoa", "aod")
    }


def channel_mse(results, filter_name="ukf", paths=slice(None)):
    """
    Per-slot mean squared channel coefficient error |α̂ - α|² over successful runs.

    ``paths`` selects the tracked paths averaged over.
    """
    successful = _successful(results)
    return mean_squared_error(_per_run(successful, filter_name, "gain", paths))


def random_walk_mse(config):
    """
    Per-slot angle MSE of a tracker that keeps its initial angles.

    The angles start at the truth and perform a random walk, so
    after slot t the error is (t + 1) σ² in rad².
    A filter that learns nothing from the pilots stays close to this.
    """
    return np.arange(1, config.n_slots + 1) * config.sigma2_rad


def _table_parameters(config):
    parameters = {p: slice(None) for p in PARAMETERS}
    if config.mode == "DL" and config.n_paths > 1:
        parameters["gain_los"] = slice(0, 1)
        parameters["gain_nlos"] = slice(1, None)
    return parameters


def mse_table(results, config):
    """
    Per-slot MSE of every filter and parameter.

    Parameters
    ----------
    results: list[RunResult]
    config: ScenarioConfig

    Returns
    -------
    table: astropy.table.QTable
        Columns slot, filter, parameter, mse, stderr, n_runs
    """
    successful = _successful(results)
    slots = np.arange(1, config.n_slots + 1)

    rows = []
    for filter_name in config.filters:
        for parameter, paths in _table_parameters(config).items():
            per_run = _per_run(successful, filter_name, parameter.split("_")[0], paths)
            mse = mean_squared_error(per_run)
            stderr = standard_error(per_run)
            for slot, value, error in zip(slots, mse, stderr):
                rows.append((slot, filter_name, parameter, value, error, len(successful)))

    return QTable(
        rows=rows,
        names=["slot", "filter", "parameter", "mse", "stderr", "n_runs"],
        dtype=[int, str, str, float, float, int],
    )


@dataclass
class MonteCarloResult:
    """
    Aggregated outcome of `monte_carlo`.

    Attributes
    ----------
    config: ScenarioConfig
    results: list[RunResult]
        All episodes, in run index order
    table: astropy.table.QTable
        See `mse_table`
    n_failed: int
        Number of failed episodes, excluded from ``table``
    """

    config: object
    results: list
    table: QTable
    n_failed: int

    def final_mse(self, filter_name, parameter):
        """MSE of the last slot"""
        table = self.table
        mask = (
            (table["filter"] == filter_name)
            & (table["parameter"] == parameter)
            & (table["slot"] == self.config.n_slots)
        )
        return float(table["mse"][mask][0])

    def spread_counts(self):
        """How often each (γ, κ) was chosen"""
        return Counter(r.spread for r in self.results if r.spread is not None)


def monte_carlo(config, n_jobs=1, progress=False):
    """
    Run ``config.n_runs`` independent episodes and aggregate their errors.

    Episode seeds are derived from ``config.seed`` and the run index,
    so the results do not depend on ``n_jobs``.

    Parameters
    ----------
    config: ScenarioConfig
    n_jobs: int or None
        Number of worker processes, None uses all available cores
    progress: bool
        If True, show a progress counter

    Returns
    -------
    result: MonteCarloResult
    """
    log.info(
        "Noise variance %.4g for SNR %.1f dB relative to N_t N_r / L",
        scenario_noise_var(config), config.snr_db,
    )

    n_runs = config.n_runs
    seeds = [episode_seed(config.seed, i) for i in range(n_runs)]
    run = partial(run_episode, config)

    if n_jobs == 1:
        results = [
            run(seed, i) for i, seed in tqdm(enumerate(seeds), total=n_runs, disable=not progress)
        ]
    else:
        n_workers = n_jobs or os.cpu_count() or 1
        chunksize = max(1, n_runs // (8 * n_workers))
        with ProcessPoolExecutor(max_workers=n_workers) as executor:
            results = list(tqdm(
                executor.map(run, seeds, range(n_runs), chunksize=chunksize),
                total=n_runs,
                disable=not progress,
            ))

    n_failed = sum(r.failed for r in results)
    if n_failed == n_runs:
        raise AllRunsFailedError(n_failed)
    if n_failed > 0:
        log.warning("%d of %d runs failed and are excluded", n_failed, n_runs)

    return MonteCarloResult(
        config=config,
        results=results,
        table=mse_table(results, config),
        n_failed=n_failed,
    )


@dataclass
class Comparison:
    """
    UKF and EKF evaluated on common random numbers.

    Attributes
    ----------
    result: MonteCarloResult
    enhancement: dict[str, float]
        Final slot enhancement of the UKF over the EKF in percent, per parameter
    """

    result: MonteCarloResult
    enhancement: dict


def compare_filters(config, n_jobs=1, progress=False):
    """
    Compare UKF and EKF on identical channel and noise realizations.

    Parameters
    ----------
    config: ScenarioConfig
        Must run both filters
    n_jobs, progress:
        See `monte_carlo`

    Returns
    -------
    comparison: Comparison
    """
    if config.filter != "both":
        raise ConfigurationError(f"Comparing filters needs filter='both', got {config.filter!r}")

    result = monte_carlo(config, n_jobs=n_jobs, progress=progress)
    parameters = _table_parameters(config)
    return Comparison(
        result=result,
        enhancement={
            p: enhancement(result.final_mse("ukf", p), result.final_mse("ekf", p))
            for p in parameters
        },
    )


def sweep(config, parameter, values, n_jobs=1, progress=False):
    """
    Run `monte_carlo` once per value of a scalar config field.

    Returns
    -------
    results: list[tuple[object, MonteCarloResult]]
    """
    if parameter not in config.field_names():
        raise ConfigurationError(f"Unknown sweep parameter {parameter!r}")

    # invalid values fail before any episode runs
    swept_configs = [config.replace(**{parameter: value}) for value in values]

    results = []
    for value, swept in zip(values, swept_configs):
        log.info("Sweeping %s = %s", parameter, value)
        results.append((value, monte_carlo(swept, n_jobs=n_jobs, progress=progress)))
    return results
