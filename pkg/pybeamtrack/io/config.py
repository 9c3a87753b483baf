"""
Reading and writing scenario configurations as TOML
"""
import json
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

from ..exceptions import ConfigurationError
from ..scenario import ScenarioConfig


__all__ = [
    "parse_config",
    "parse_overrides",
    "config_from_mapping",
    "dump_config",
]


#: Optional table whose keys are merged into the top level
SCENARIO_TABLE = "scenario"


def _parse_value(raw):
    try:
        return tomllib.loads(f"value = {raw}")["value"]
    except tomllib.TOMLDecodeError:
        return raw.strip()


def parse_overrides(overrides):
    """
    Parse ``key=value`` strings, values use TOML syntax with
    a fallback to bare strings.

    Returns
    -------
    values: dict
    """
    values = {}
    for override in overrides:
        key, sep, raw = override.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigurationError(f"Override {override!r} is not of the form key=value")
        values[key] = _parse_value(raw)
    return values


def config_from_mapping(mapping):
    """
    Create a validated `~pybeamtrack.scenario.ScenarioConfig`,
    unspecified fields take the defaults of the configured mode.
    """
    values = dict(mapping)
    unknown = sorted(set(values) - set(ScenarioConfig.field_names()))
    if unknown:
        raise ConfigurationError(f"Unknown config key(s): {', '.join(unknown)}")

    mode = values.pop("mode", "DL")
    return ScenarioConfig.for_mode(mode, **values)


def parse_config(path=None, overrides=()):
    """
    Read a scenario configuration.

    Parameters
    ----------
    path: str or pathlib.Path or None
        TOML file, None starts from the defaults
    overrides: iterable[str]
        ``key=value`` strings applied after reading the file

    Returns
    -------
    config: ScenarioConfig

    Raises
    ------
    ConfigurationError: for syntax errors, unknown keys and invalid values
    """
    data = {}
    if path is not None:
        path = Path(path)
        if not path.is_file():
            raise ConfigurationError(f"Config file {path} does not exist")
        try:
            data = tomllib.loads(path.read_text())
        except tomllib.TOMLDecodeError as e:
            raise ConfigurationError(f"Could not parse {path}: {e}") from None

    if isinstance(data.get(SCENARIO_TABLE), dict):
        table = data.pop(SCENARIO_TABLE)
        data.update(table)

    data.update(parse_overrides(overrides))
    return config_from_mapping(data)


def _format_value(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (tuple, list)):
        return "[" + ", ".join(_format_value(v) for v in value) + "]"
    return json.dumps(str(value))


def dump_config(config):
    """
    TOML representation of ``config``, `parse_config` reads it back
    into an equal configuration.
    """
    return "".join(
        f"{key} = {_format_value(value)}\n" for key, value in config.to_dict().items()
    )
