"""
Writing Monte Carlo results to CSV and text summaries
"""
from io import StringIO
import logging
from pathlib import Path

from astropy.io import ascii
from astropy.table import QTable

from ..simulation import random_walk_mse, scenario_noise_var
from ..version import __version__
from .config import _format_value, dump_config


__all__ = [
    "MSE_FILENAME",
    "SUMMARY_FILENAME",
    "SWEEP_FILENAME",
    "emit_results",
    "emit_sweep",
]


log = logging.getLogger(__name__)

MSE_FILENAME = "mse.csv"
SUMMARY_FILENAME = "summary.txt"
SWEEP_FILENAME = "sweep.csv"

CREATOR = f"pybeamtrack v{__version__}"
#: Columns of the sweep table, a swept field of the same name is prefixed
SWEEP_COLUMNS = ("filter", "parameter", "mse", "stderr", "n_runs")
#: Round-trip precision for floating point columns
FLOAT_FORMAT = "%.17g"


def _header(config):
    lines = [CREATOR, f"seed = {config.seed}", f"config_hash = {config.config_hash()}"]
    lines += ["config: " + line for line in dump_config(config).splitlines()]
    return lines


def _is_number(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _value_label(value):
    if isinstance(value, str):
        return value
    return _format_value(value)


def _write_csv(table, path, header, float_columns):
    buffer = StringIO()
    ascii.write(
        table, buffer, format="csv",
        formats={col: FLOAT_FORMAT for col in float_columns},
    )
    text = "".join(f"# {line}\n" for line in header) + buffer.getvalue()
    with open(path, "w", newline="") as f:
        f.write(text)
    log.info("Wrote %s", path)


def _summary(result, enhancement):
    config = result.config
    n_runs = config.n_runs

    lines = [
        CREATOR,
        f"mode = {config.mode}, users = {config.k_users}, paths = {config.n_paths}",
        f"runs = {n_runs}, seed = {config.seed}, config_hash = {config.config_hash()}",
        f"noise variance = {scenario_noise_var(config)!r} (reference power N_t N_r / L)",
        f"failed runs = {result.n_failed} of {n_runs}",
    ]

    counts = result.spread_counts()
    if counts:
        lines.append("chosen spread (gamma, kappa):")
        for (gamma, kappa), count in sorted(counts.items()):
            lines.append(f"  gamma = {gamma:g}, kappa = {kappa:g}: {count} runs")

    table = result.table
    final = table[table["slot"] == config.n_slots]
    lines.append(f"final slot ({config.n_slots}) mse:")
    for row in final:
        lines.append(
            f"  {row['filter']} {row['parameter']}: {row['mse']:.6e}"
            f" +- {row['stderr']:.2e}"
        )

    lines.append(
        f"random walk angle mse (no tracking): {random_walk_mse(config)[-1]:.6e}"
    )

    if enhancement is not None:
        for parameter, value in enhancement.items():
            lines.append(f"enhancement {parameter}: {value:+.2f} %")

    lines.append("config:")
    lines += dump_config(config).splitlines()
    return "\n".join(lines) + "\n"


def emit_results(result, output_dir, enhancement=None):
    """
    Write the MSE table and a summary of a Monte Carlo run.

    Both files start with the resolved configuration and master seed
    and are identical for identical inputs.

    Parameters
    ----------
    result: pybeamtrack.simulation.MonteCarloResult
    output_dir: str or pathlib.Path
        Created if missing
    enhancement: dict[str, float] or None
        Final slot UKF enhancement per parameter, see `~pybeamtrack.simulation.compare_filters`

    Returns
    -------
    paths: list[pathlib.Path]
        The written files
    """
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)

    mse_path = output_dir / MSE_FILENAME
    _write_csv(result.table, mse_path, _header(result.config), ["mse", "stderr"])

    summary_path = output_dir / SUMMARY_FILENAME
    with open(summary_path, "w", newline="") as f:
        f.write(_summary(result, enhancement))
    log.info("Wrote %s", summary_path)

    return [mse_path, summary_path]


def emit_sweep(parameter, sweep_results, output_dir):
    """
    Write one result directory per swept value and a table of final slot MSEs.

    Numeric values give a float column, all others a string column.
    The column is named ``swept_<parameter>`` if ``parameter`` clashes
    with one of the other columns.

    Parameters
    ----------
    parameter: str
        Name of the swept config field
    sweep_results: list[tuple[object, MonteCarloResult]]
        Output of `~pybeamtrack.simulation.sweep`
    output_dir: str or pathlib.Path

    Returns
    -------
    paths: list[pathlib.Path]
    """
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)

    numeric = all(_is_number(value) for value, _ in sweep_results)
    column = f"swept_{parameter}" if parameter in SWEEP_COLUMNS else parameter

    paths = []
    rows = []
    for value, result in sweep_results:
        label = _value_label(value)
        paths += emit_results(result, output_dir / f"{parameter}={label}")
        table = result.table
        final = table[table["slot"] == result.config.n_slots]
        for row in final:
            rows.append((
                float(value) if numeric else label, row["filter"], row["parameter"],
                row["mse"], row["stderr"], row["n_runs"],
            ))

    table = QTable(
        rows=rows,
        names=[column, *SWEEP_COLUMNS],
        dtype=[float if numeric else str, str, str, float, float, int],
    )
    sweep_path = output_dir / SWEEP_FILENAME
    header = [CREATOR, f"sweep over {parameter}"] + _header(sweep_results[0][1].config)[1:]
    float_columns = [column, "mse", "stderr"] if numeric else ["mse", "stderr"]
    _write_csv(table, sweep_path, header, float_columns)
    return paths + [sweep_path]
