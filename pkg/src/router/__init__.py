from .config_text import (
    KNOWN_KEYS,
    Command,
    GridScale,
    GridSpec,
    RunConfig,
    SweepVariable,
    build_run_config,
    parse_config,
    parse_values,
)

__all__ = [
    "KNOWN_KEYS",
    "Command",
    "GridScale",
    "GridSpec",
    "RunConfig",
    "SweepVariable",
    "build_run_config",
    "parse_config",
    "parse_values",
]
