"""
Command line interface, ``pybeamtrack {run,compare,sweep,selftest}``
"""
import argparse
import logging
import os
from pathlib import Path
import sys

from .exceptions import BeamTrackException, ConfigurationError
from .io import emit_results, emit_sweep, parse_config, parse_overrides
from .selftest import run_selftest
from .simulation import compare_filters, monte_carlo, sweep
from .version import __version__


__all__ = ["main", "build_parser", "EXIT_OK", "EXIT_INVALID", "EXIT_FAILED"]


log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_FAILED = 2

#: Environment variable with the default output directory
OUTPUT_DIR_ENV = "PYBEAMTRACK_OUTPUT_DIR"
DEFAULT_OUTPUT_DIR = "results"


def _add_scenario_arguments(parser):
    parser.add_argument("--config", type=Path, help="TOML scenario file, defaults are used if omitted")
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="Override a config key, may be given multiple times",
    )
    parser.add_argument(
        "--out",
        type=Path,
        default=None,
        help=f"Output directory, defaults to ${OUTPUT_DIR_ENV} or '{DEFAULT_OUTPUT_DIR}'",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=None,
        help="Number of worker processes, defaults to all available cores",
    )
    parser.add_argument("--progress", action="store_true", help="Show a progress counter")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pybeamtrack",
        description="Beam and channel tracking in beamspace mmWave MIMO systems",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "-v", "--verbose", action="count", default=0,
        help="Increase verbosity, -v for info and -vv for debug output",
    )

    subparsers = parser.add_subparsers(dest="command", required=True)

    run = subparsers.add_parser("run", help="Monte Carlo run of a scenario")
    _add_scenario_arguments(run)

    compare = subparsers.add_parser("compare", help="Compare UKF and EKF on common random numbers")
    _add_scenario_arguments(compare)

    sweep_parser = subparsers.add_parser("sweep", help="Repeat a run over values of one config key")
    _add_scenario_arguments(sweep_parser)
    sweep_parser.add_argument("--param", required=True, help="Config key to sweep, e.g. sigma2")
    sweep_parser.add_argument(
        "--values", required=True, help="Comma separated values, e.g. 0.0625,0.25"
    )

    selftest = subparsers.add_parser("selftest", help="Run the fast invariant checks")
    selftest.add_argument("--seed", type=int, default=0)

    return parser


def _output_dir(args):
    if args.out is not None:
        return args.out
    return Path(os.environ.get(OUTPUT_DIR_ENV, DEFAULT_OUTPUT_DIR))


def _n_jobs(args):
    if args.threads is not None and args.threads < 1:
        raise ConfigurationError(f"--threads must be >= 1, got {args.threads}")
    return args.threads


def _sweep_values(param, values):
    raw = [v for v in values.split(",") if v.strip()]
    if not raw:
        raise ConfigurationError("--values needs at least one value")
    return [parse_overrides([f"{param}={v}"])[param] for v in raw]


def _run(args):
    config = parse_config(args.config, args.overrides)
    result = monte_carlo(config, n_jobs=_n_jobs(args), progress=args.progress)
    for path in emit_results(result, _output_dir(args)):
        print(path)


def _compare(args):
    config = parse_config(args.config, list(args.overrides) + ["filter=both"])
    comparison = compare_filters(config, n_jobs=_n_jobs(args), progress=args.progress)
    for path in emit_results(comparison.result, _output_dir(args), comparison.enhancement):
        print(path)
    for parameter, value in comparison.enhancement.items():
        print(f"enhancement {parameter}: {value:+.2f} %")


def _sweep(args):
    config = parse_config(args.config, args.overrides)
    values = _sweep_values(args.param, args.values)
    results = sweep(config, args.param, values, n_jobs=_n_jobs(args), progress=args.progress)
    for path in emit_sweep(args.param, results, _output_dir(args)):
        print(path)


def _selftest(args):
    return run_selftest(seed=args.seed)


COMMANDS = {
    "run": _run,
    "compare": _compare,
    "sweep": _sweep,
    "selftest": _selftest,
}


def main(argv=None):
    """
    Entry point of the ``pybeamtrack`` command.

    Returns
    -------
    exit_code: int
        0 on success, 1 for invalid configurations or input,
        2 for numerical or runtime failures
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s [%(name)s] %(message)s")

    try:
        outcome = COMMANDS[args.command](args)
    except ValueError as e:
        log.error("%s", e)
        return EXIT_INVALID
    except (BeamTrackException, ArithmeticError, RuntimeError, OSError) as e:
        log.error("%s", e)
        return EXIT_FAILED

    if outcome is False:
        return EXIT_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
