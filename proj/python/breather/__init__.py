"""Peregrine breather stability experiments."""

from ._breather import (
    ConfigError,
    IoError,
    WindowError,
    __version__,
    compare,
    in_absolute_spectrum,
    in_essential_spectrum,
    list_scenarios,
    max_growth_rate,
    peregrine,
    run,
    spectrum_scan,
)

__all__ = [
    "ConfigError",
    "IoError",
    "WindowError",
    "__version__",
    "compare",
    "in_absolute_spectrum",
    "in_essential_spectrum",
    "list_scenarios",
    "max_growth_rate",
    "peregrine",
    "run",
    "spectrum_scan",
]
