from .config import config_from_mapping, dump_config, parse_config, parse_overrides
from .results import emit_results, emit_sweep


__all__ = [
    "config_from_mapping",
    "dump_config",
    "emit_results",
    "emit_sweep",
    "parse_config",
    "parse_overrides",
]
